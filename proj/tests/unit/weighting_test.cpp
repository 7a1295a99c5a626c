#include <gtest/gtest.h>

#include <cmath>

#include "folkscope/error.hpp"
#include "folkscope/weighting.hpp"
#include "helpers.hpp"

using namespace folkscope;
using testutil::bm;

TEST(InverseFrequency, ByHand) {
  // 100 resources, tag "rare" on 10 of them, "all" on every one.
  std::vector<Bookmark> b;
  for (int r = 0; r < 100; ++r) {
    std::vector<std::string> tags{"all"};
    if (r < 10) tags.push_back("rare");
    b.push_back(bm("u" + std::to_string(r % 7), "r" + std::to_string(r), tags));
  }
  auto f = Folksonomy::ingest(b);
  EXPECT_DOUBLE_EQ(inverse_frequency("rare", f, InverseFrequencyKind::irf), std::log(10.0));
  EXPECT_EQ(inverse_frequency("all", f, InverseFrequencyKind::irf), 0.0);
  EXPECT_EQ(inverse_frequency("rare", f, InverseFrequencyKind::none), 1.0);
  EXPECT_THROW(inverse_frequency("missing", f, InverseFrequencyKind::irf), InvalidArgument);

  std::vector<std::string> ids;
  for (const auto& [id, e] : f.resources()) ids.push_back(id);
  auto vocab = build_tag_vocabulary(f, ids);
  auto v = weight_resource(f, "r0", InverseFrequencyKind::irf, vocab);
  EXPECT_EQ(v.weight(*vocab.find("all")), 0.0);
  EXPECT_EQ(v.size(), 1u);
}

TEST(InverseFrequency, SingleBookmarkIbfIsZero) {
  auto f = Folksonomy::ingest({bm("u", "r", {"a"})});
  EXPECT_EQ(inverse_frequency("a", f, InverseFrequencyKind::ibf), 0.0);
}

TEST(InverseFrequency, NoneEqualsWeightedFta) {
  std::vector<Bookmark> b;
  for (int u = 0; u < 20; ++u) {
    for (int r = 0; r < 6; ++r) {
      b.push_back(bm("u" + std::to_string(u), "r" + std::to_string(r),
                     {"t" + std::to_string((u * r) % 5), "t" + std::to_string(u % 3)}));
    }
  }
  auto f = Folksonomy::ingest(b);
  std::vector<std::string> ids;
  for (const auto& [id, e] : f.resources()) ids.push_back(id);
  auto vocab = build_tag_vocabulary(f, ids);
  for (const auto& id : ids) {
    EXPECT_EQ(weight_resource(f, id, InverseFrequencyKind::none, vocab),
              represent_resource(f, id, {TagWeighting::weighted, false, 10}, vocab));
  }
}

TEST(InverseFrequency, Names) {
  EXPECT_EQ(parse_inverse_frequency("iuf"), InverseFrequencyKind::iuf);
  EXPECT_EQ(parse_inverse_frequency("tf"), InverseFrequencyKind::none);
  EXPECT_EQ(inverse_frequency_name(InverseFrequencyKind::ibf), "ibf");
  EXPECT_THROW(parse_inverse_frequency("idf"), InvalidArgument);
}

TEST(Pearson, Examples) {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> lin, neg;
  for (double v : x) {
    lin.push_back(2 * v + 1);
    neg.push_back(-v);
  }
  EXPECT_DOUBLE_EQ(pearson(x, lin), 1.0);
  EXPECT_DOUBLE_EQ(pearson(x, neg), -1.0);
  EXPECT_NEAR(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
}

TEST(Pearson, Errors) {
  std::vector<double> a{1, 2}, b{1, 2, 3}, c{5, 5};
  EXPECT_THROW(pearson(a, b), InvalidArgument);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{2}), InvalidArgument);
  EXPECT_THROW(pearson(a, c), DegenerateInput);
}

TEST(Spearman, RanksAndInvariance) {
  EXPECT_EQ(average_ranks(std::vector<double>{1, 1, 2}), (std::vector<double>{1.5, 1.5, 3}));
  std::vector<double> x{0.3, -1, 4, 2.5, 9};
  std::vector<double> y, rev;
  for (double v : x) {
    y.push_back(std::exp(v));
    rev.push_back(-v * v * v);
  }
  EXPECT_DOUBLE_EQ(spearman(x, y), 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, rev), -1.0);
}

TEST(Correlation, IdenticalSequencesAndGuards) {
  // rf == bf for every tag and |R| == |B|: one bookmark per resource.
  std::vector<Bookmark> b;
  for (int r = 0; r < 8; ++r) {
    std::vector<std::string> tags{"t0"};
    for (int t = 1; t <= r % 4; ++t) tags.push_back("t" + std::to_string(t));
    b.push_back(bm("u" + std::to_string(r % 3), "r" + std::to_string(r), tags));
  }
  auto pairs = correlate_weightings(Folksonomy::ingest(b));
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[1].first, InverseFrequencyKind::irf);
  EXPECT_EQ(pairs[1].second, InverseFrequencyKind::ibf);
  EXPECT_NEAR(pairs[1].r, 1.0, 1e-12);
  EXPECT_THROW(correlate_weightings(Folksonomy::ingest({bm("u", "r", {"a"})})), InvalidArgument);
}
