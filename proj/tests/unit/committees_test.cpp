#include <gtest/gtest.h>

#include <sstream>

#include "folkscope/committees.hpp"
#include "folkscope/error.hpp"
#include "helpers.hpp"

using namespace folkscope;

namespace {

MarginTable table(std::vector<std::vector<double>> scores) {
  MarginTable t;
  t.categories = {"c1", "c2", "c3"};
  for (std::size_t i = 0; i < scores.size(); ++i) t.instances.push_back("x" + std::to_string(i));
  t.scores = std::move(scores);
  return t;
}

}  // namespace

TEST(Normalize, DividesByGlobalMax) {
  MarginTable t;
  t.categories = {"a", "b"};
  t.instances = {"x"};
  t.scores = {{2, 4}};
  NormalizationReport rep;
  auto n = normalize(t, &rep);
  EXPECT_EQ(n.scores[0], (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(rep.divisor, 4.0);
  EXPECT_FALSE(rep.degenerate);
  EXPECT_EQ(normalize(n), n);
}

TEST(Normalize, AllEqualToMax) {
  auto n = normalize(table({{3, 3, 3}, {3, 3, 3}}));
  for (const auto& row : n.scores) EXPECT_EQ(row, (std::vector<double>{1, 1, 1}));
}

TEST(Normalize, NonPositiveMaxFallsBack) {
  NormalizationReport rep;
  auto n = normalize(table({{-1, -4, -2}}), &rep);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_EQ(rep.divisor, 4.0);
  EXPECT_EQ(n.scores[0], (std::vector<double>{-0.25, -1.0, -0.5}));
  NormalizationReport zero;
  auto z = normalize(table({{0, 0, 0}}), &zero);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_EQ(z.scores[0], (std::vector<double>{0, 0, 0}));
}

TEST(Combine, WorkedExample) {
  std::vector<MarginTable> ts{table({{1.2, 1.1, 0.6}}), table({{0.5, 1.0, 1.2}})};
  auto s = combine(ts, false);
  EXPECT_NEAR(s.scores[0][0], 1.7, 1e-12);
  EXPECT_NEAR(s.scores[0][1], 2.1, 1e-12);
  EXPECT_NEAR(s.scores[0][2], 1.8, 1e-12);
  EXPECT_EQ(predict_committee(s)[0], 1u);
}

TEST(Combine, IdentityAndZeroMember) {
  auto a = table({{1.2, 1.1, 0.6}, {0.1, -0.3, 0.2}});
  std::vector<MarginTable> one{a};
  EXPECT_EQ(combine(one, false), a);
  std::vector<MarginTable> with_zero{a, table({{0, 0, 0}, {0, 0, 0}})};
  EXPECT_EQ(combine(with_zero, false), a);
}

TEST(Combine, OrderIndependentPrediction) {
  auto a = table({{1.2, 1.1, 0.6}});
  auto b = table({{0.5, 1.0, 1.2}});
  auto c = table({{0.9, -0.2, 0.4}});
  std::vector<MarginTable> abc{a, b, c}, cba{c, b, a};
  EXPECT_EQ(predict_committee(combine(abc, true)), predict_committee(combine(cba, true)));
  EXPECT_EQ(predict_committee(combine(abc, false)), predict_committee(combine(cba, false)));
}

TEST(Combine, AlignsByName) {
  MarginTable a = table({{1, 0, 0}, {0, 1, 0}});
  MarginTable b;
  b.categories = {"c3", "c1", "c2"};
  b.instances = {"x1", "x0"};
  b.scores = {{0, 0, 5}, {0, 5, 0}};  // x1 -> c2, x0 -> c1
  std::vector<MarginTable> ts{a, b};
  auto s = combine(ts, false);
  EXPECT_EQ(s.scores[0], (std::vector<double>{6, 0, 0}));
  EXPECT_EQ(s.scores[1], (std::vector<double>{0, 6, 0}));
}

TEST(Combine, MismatchRejected) {
  MarginTable a = table({{1, 0, 0}});
  MarginTable b = table({{1, 0, 0}, {0, 1, 0}});
  std::vector<MarginTable> ts{a, b};
  EXPECT_THROW(combine(ts, false), InvalidArgument);
  std::vector<MarginTable> none;
  EXPECT_THROW(combine(none, false), InvalidArgument);
}

TEST(Predict, TieGoesToLowestId) {
  EXPECT_EQ(predict_committee(std::vector<double>{2, 2, 2}), 0u);
}

TEST(MarginIo, RoundTripAndErrors) {
  auto a = table({{1.2, 1.1, 0.6}, {0.1, -1e-17, 3}});
  std::stringstream s;
  write_margins(s, a);
  EXPECT_EQ(read_margins(s), a);
  std::istringstream bad("x\tc1:1 c2\n");
  EXPECT_THROW(read_margins(bad), ParseError);
  std::istringstream inconsistent("x\tc1:1 c2:2\ny\tc1:1 c3:2\n");
  EXPECT_THROW(read_margins(inconsistent), ParseError);
  auto f = read_margins_file(testutil::fixture("committee_a.tsv"));
  EXPECT_EQ(f.categories, (std::vector<std::string>{"category1", "category2", "category3"}));
}
