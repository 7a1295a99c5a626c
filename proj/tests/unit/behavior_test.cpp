#include <gtest/gtest.h>

#include "folkscope/behavior.hpp"
#include "folkscope/error.hpp"
#include "helpers.hpp"

using namespace folkscope;
using testutil::bm;

namespace {

std::string res(int i) { return "r" + std::to_string(i); }

UserProfile profile(std::string user, std::size_t assignments, double value) {
  UserProfile p;
  p.user = std::move(user);
  p.assignments = assignments;
  p.tpp = value;
  return p;
}

}  // namespace

TEST(Tpp, ByHand) {
  auto f = Folksonomy::ingest({bm("u", "r1", {"a", "b"}), bm("u", "r2", {"a", "b", "c"}), bm("u", "r3", {"d"})});
  EXPECT_DOUBLE_EQ(tpp(f, "u"), 2.0);
  std::vector<Bookmark> four;
  for (int i = 0; i < 5; ++i) four.push_back(bm("v", res(i), {"a", "b", "c", "d"}));
  EXPECT_DOUBLE_EQ(tpp(Folksonomy::ingest(four), "v"), 4.0);
  EXPECT_DOUBLE_EQ(tpp(Folksonomy::ingest({bm("w", "r", {"x"}), bm("w", "s", {"y"})}), "w"), 1.0);
}

TEST(Trr, ByHand) {
  std::vector<Bookmark> b;
  for (int i = 0; i < 10; ++i) b.push_back(bm("u", res(i), {"t" + std::to_string(i % 5)}));
  EXPECT_DOUBLE_EQ(trr(Folksonomy::ingest(b), "u"), 0.5);
  b.clear();
  for (int i = 0; i < 4; ++i) b.push_back(bm("u", res(i), {"same"}));
  EXPECT_DOUBLE_EQ(trr(Folksonomy::ingest(b), "u"), 0.25);
  b.clear();
  for (int i = 0; i < 6; ++i) b.push_back(bm("u", res(i), {"x" + std::to_string(i), "y" + std::to_string(i)}));
  auto f = Folksonomy::ingest(b);
  EXPECT_DOUBLE_EQ(trr(f, "u"), 2.0);
  EXPECT_DOUBLE_EQ(tpp(f, "u"), 2.0);
}

TEST(Orphan, CeilingAt150) {
  std::vector<Bookmark> b;
  for (int i = 0; i < 150; ++i) {
    std::vector<std::string> tags{"big"};
    if (i < 2) tags.push_back("two");
    if (i < 3) tags.push_back("three");
    if (i == 0) tags.push_back("one");
    b.push_back(bm("u", res(i), tags));
  }
  // big:150 three:3 two:2 one:1, n = 2 -> two and one are orphans
  EXPECT_DOUBLE_EQ(orphan(Folksonomy::ingest(b), "u"), 2.0 / 4.0);
}

TEST(Orphan, FloorCaseAndSingleTag) {
  std::vector<Bookmark> b;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> tags{"big"};
    if (i < 2) tags.push_back("two");
    if (i == 0) tags.push_back("one");
    b.push_back(bm("u", res(i), tags));
  }
  EXPECT_DOUBLE_EQ(orphan(Folksonomy::ingest(b), "u"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(orphan(Folksonomy::ingest({bm("u", "r", {"solo"})}), "u"), 1.0);
}

TEST(Profiles, UnknownOrUnannotatedUser) {
  auto f = Folksonomy::ingest({bm("u", "r", {}), bm("v", "r", {"a"})});
  EXPECT_THROW(user_profile(f, "u"), InvalidArgument);
  EXPECT_THROW(user_profile(f, "nobody"), InvalidArgument);
  EXPECT_EQ(user_profiles(f).size(), 1u);
}

TEST(Ranking, AscendingThenId) {
  std::vector<UserProfile> ps{profile("b", 1, 3.0), profile("a", 1, 1.0), profile("c", 1, 1.0)};
  auto r = rank_users(ps, BehaviorMeasure::tpp);
  EXPECT_EQ(r[0].user, "a");
  EXPECT_EQ(r[1].user, "c");
  EXPECT_EQ(r[2].user, "b");
  std::reverse(ps.begin(), ps.end());
  EXPECT_EQ(rank_users(ps, BehaviorMeasure::tpp), r);
}

TEST(Split, HandAccumulation) {
  std::vector<UserProfile> ranked{profile("cat", 60, 1.0), profile("des", 40, 2.0)};
  auto s = split_by_assignments(ranked, BehaviorMeasure::tpp, 50);
  EXPECT_EQ(s.categorizers, (std::vector<std::string>{"cat"}));
  EXPECT_EQ(s.describers, (std::vector<std::string>{"des", "cat"}));
  EXPECT_DOUBLE_EQ(s.categorizer_fraction, 0.6);
  EXPECT_EQ(s.overlap, 1u);
}

TEST(Split, HundredPercentTakesEveryone) {
  std::vector<UserProfile> ranked{profile("a", 3, 1.0), profile("b", 5, 2.0), profile("c", 2, 3.0)};
  auto s = split_by_assignments(ranked, BehaviorMeasure::tpp, 100);
  EXPECT_EQ(s.categorizers.size(), 3u);
  EXPECT_EQ(s.describers.size(), 3u);
  EXPECT_DOUBLE_EQ(s.categorizer_fraction, 1.0);
}

TEST(Split, Preconditions) {
  std::vector<UserProfile> ranked{profile("a", 3, 1.0)};
  EXPECT_THROW(split_by_assignments(ranked, BehaviorMeasure::tpp, 0), InvalidArgument);
  EXPECT_THROW(split_by_assignments(ranked, BehaviorMeasure::tpp, 101), InvalidArgument);
  EXPECT_THROW(split_by_assignments({}, BehaviorMeasure::tpp, 50), InvalidArgument);
}

TEST(Descriptiveness, IdenticalDisjointAndMean) {
  std::map<FeatureId, double> a{{0, 1.0}, {1, 2.0}}, b{{2, 1.0}};
  std::map<std::string, FeatureVector> t{{"r1", FeatureVector(a)}, {"r2", FeatureVector(a)}};
  std::map<std::string, FeatureVector> same{{"r1", FeatureVector(a)}, {"r2", FeatureVector(a)}};
  std::map<std::string, FeatureVector> mixed{{"r1", FeatureVector(a)}, {"r2", FeatureVector(b)}};
  EXPECT_NEAR(descriptiveness(t, same).value, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(descriptiveness(t, mixed).value, 0.5);
  std::map<std::string, FeatureVector> zero{{"r1", FeatureVector()}, {"r2", FeatureVector(b)}};
  auto z = descriptiveness(t, zero);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(z.zero_vector_resources, (std::vector<std::string>{"r1"}));
}

TEST(Measure, Names) {
  EXPECT_EQ(parse_measure("orphan"), BehaviorMeasure::orphan);
  EXPECT_EQ(measure_name(BehaviorMeasure::trr), "trr");
  EXPECT_THROW(parse_measure("tps"), InvalidArgument);
}
