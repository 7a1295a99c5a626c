#include <gtest/gtest.h>

#include <sstream>

#include "folkscope/error.hpp"
#include "folkscope/folksonomy.hpp"
#include "helpers.hpp"

using namespace folkscope;
using testutil::bm;

TEST(Ingest, CountsWeightsAndAnnotators) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"a", "b"}), bm("u2", "r1", {"b"})});
  const auto& r = f.resource("r1");
  EXPECT_EQ(r.weights.at("a"), 1u);
  EXPECT_EQ(r.weights.at("b"), 2u);
  EXPECT_EQ(r.annotators, 2u);
  EXPECT_EQ(r.assignments, 3u);
  EXPECT_EQ(f.frequency("b"), (TagFrequency{1, 2, 2}));
}

TEST(Ingest, DuplicateTagsCollapse) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"a", "a", "b"})});
  EXPECT_EQ(f.bookmarks()[0].tags, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(f.report().duplicate_tags, 1u);
}

TEST(Ingest, OneBookmarkPerUserResource) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"a"}), bm("u1", "r1", {"b"})});
  EXPECT_EQ(f.bookmarks().size(), 1u);
  EXPECT_EQ(f.report().duplicate_bookmarks, 1u);
}

TEST(Ingest, UnannotatedBookmarksDoNotCount) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {}), bm("u2", "r2", {"x"})});
  EXPECT_EQ(f.report().bookmarks, 2u);
  EXPECT_EQ(f.bookmark_count(), 1u);
  EXPECT_EQ(f.resource_count(), 1u);
  EXPECT_EQ(f.user_count(), 1u);
}

TEST(Ingest, UnknownResourceThrows) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"a"})});
  EXPECT_THROW(f.resource("nope"), InvalidArgument);
  EXPECT_THROW(f.frequency("nope"), InvalidArgument);
  EXPECT_EQ(f.find_resource("nope"), nullptr);
}

TEST(BookmarkIo, RoundTrip) {
  std::vector<Bookmark> in{bm("u1", "r1", {"a", "b c"}, 3), bm("u2", "r\t2", {})};
  std::stringstream s;
  write_bookmarks(s, in);
  EXPECT_EQ(read_bookmarks(s), in);
}

TEST(BookmarkIo, ParseErrorsCarryLine) {
  std::istringstream s("{\"user\":\"u\",\"resource\":\"r\",\"tags\":[]}\n\n{\"user\":\"u\"}\n");
  try {
    read_bookmarks(s);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_bookmark("not json", 1), ParseError);
  EXPECT_THROW(parse_bookmark(R"({"user":"u","resource":"r","tags":[1]})", 1), ParseError);
  EXPECT_THROW(parse_bookmark(R"({"user":"u","resource":"r","tags":[],"order":-1})", 1), ParseError);
  EXPECT_THROW(read_bookmarks_file("/nonexistent/file"), IoError);
}

TEST(ReadingState, StripsBlockedTags) {
  auto out = strip_reading_state({bm("u", "r", {"read", "fantasy"}), bm("u", "s", {"read"})},
                                 default_reading_state_tags());
  EXPECT_EQ(out[0].tags, (std::vector<std::string>{"fantasy"}));
  EXPECT_TRUE(out[1].tags.empty());
  std::vector<Bookmark> in{bm("u", "r", {"read"})};
  EXPECT_EQ(strip_reading_state(in, {}), in);
}

TEST(Popularity, ThresholdBoundary) {
  std::vector<Bookmark> b;
  for (int i = 0; i < 100; ++i) b.push_back(bm("u" + std::to_string(i), "hot", {"t"}));
  for (int i = 0; i < 99; ++i) b.push_back(bm("u" + std::to_string(i), "warm", {"t"}));
  auto f = Folksonomy::ingest(b);
  auto pop = filter_popular(f, 100);
  EXPECT_TRUE(pop.contains("hot"));
  EXPECT_FALSE(pop.contains("warm"));
  EXPECT_EQ(filter_popular(f, 1).size(), 2u);
}

TEST(Categories, PruneBoundary) {
  std::vector<CategoryAssignment> labels;
  for (int i = 0; i < 5; ++i) labels.push_back({"a" + std::to_string(i), "big", std::nullopt});
  for (int i = 0; i < 4; ++i) labels.push_back({"b" + std::to_string(i), "small", std::nullopt});
  auto p = prune_small_categories(labels, CategoryLevel::top, 5);
  EXPECT_EQ(p.kept.size(), 5u);
  EXPECT_EQ(p.removed.at("small"), 4u);
  EXPECT_EQ(prune_small_categories(labels, CategoryLevel::top, 1).kept.size(), labels.size());
}

TEST(Categories, SecondLevelIsQualified) {
  CategoryAssignment a{"r", "Science", std::string("Biology")};
  EXPECT_EQ(*category_label(a, CategoryLevel::second), "Science/Biology");
  CategoryAssignment b{"r", "Science", std::nullopt};
  EXPECT_FALSE(category_label(b, CategoryLevel::second));
  auto p = prune_small_categories({a, b}, CategoryLevel::second, 1);
  EXPECT_EQ(p.kept.size(), 1u);
  EXPECT_EQ(p.unlabeled_at_level, 1u);
}

TEST(Categories, ReadRejectsDuplicates) {
  std::istringstream ok("r1\tA\tx\nr2\tB\n");
  auto labels = read_categories(ok);
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[0].second, "x");
  EXPECT_FALSE(labels[1].second);
  std::istringstream dup("r1\tA\nr1\tB\n");
  EXPECT_THROW(read_categories(dup), ParseError);
}

TEST(Novelty, WorkedExample) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"tag1", "tag2"}, 1), bm("u2", "r1", {"tag2", "tag3"}, 2)});
  auto pts = novelty_ratios(f, "r1");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[0].ratio, 1.0);
  EXPECT_DOUBLE_EQ(pts[1].ratio, 0.5);
}

TEST(Novelty, SubsetAndDisjoint) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"a", "b"}, 1), bm("u2", "r1", {"a"}, 2),
                               bm("u1", "r2", {"a"}, 1), bm("u2", "r2", {"z"}, 2)});
  EXPECT_DOUBLE_EQ(novelty_ratios(f, "r1")[1].ratio, 0.0);
  EXPECT_DOUBLE_EQ(novelty_ratios(f, "r2")[1].ratio, 1.0);
  EXPECT_DOUBLE_EQ(mean_novelty(f), 0.5);
}

TEST(Novelty, SyntheticOrderRefusedUnlessAllowed) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"a"}), bm("u2", "r1", {"b"})});
  EXPECT_TRUE(f.resource("r1").synthetic_order);
  EXPECT_THROW(novelty_ratios(f, "r1"), InvalidArgument);
  EXPECT_EQ(novelty_ratios(f, "r1", true).size(), 2u);
}

TEST(Statistics, SingleBookmark) {
  auto s = corpus_statistics(Folksonomy::ingest({bm("u1", "r1", {"a", "b"})}));
  EXPECT_DOUBLE_EQ(s.tags_per_bookmark, 2.0);
  EXPECT_DOUBLE_EQ(s.tags_per_user, 2.0);
  EXPECT_DOUBLE_EQ(s.tags_per_resource, 2.0);
}

TEST(Statistics, EqualityBuckets) {
  auto s = corpus_statistics(Folksonomy::ingest({bm("u1", "r1", {"a"}), bm("u2", "r2", {"a"})}));
  EXPECT_DOUBLE_EQ(s.bookmarks_vs_users.equal, 100.0);
  EXPECT_DOUBLE_EQ(s.bookmarks_vs_resources.equal, 100.0);
}

TEST(Statistics, BucketsPartition) {
  std::vector<Bookmark> b;
  for (int u = 0; u < 30; ++u) {
    for (int r = 0; r < 10; ++r) {
      if ((u * 7 + r * 3) % 4 == 0) continue;
      b.push_back(bm("u" + std::to_string(u), "r" + std::to_string(r),
                     {"t" + std::to_string((u + r) % 9), "t" + std::to_string(u % 5)}));
    }
  }
  auto s = corpus_statistics(Folksonomy::ingest(b));
  for (const auto& x : {s.bookmarks_vs_users, s.resources_vs_users, s.bookmarks_vs_resources}) {
    EXPECT_NEAR(x.greater + x.equal + x.less, 100.0, 1e-9);
  }
  EXPECT_DOUBLE_EQ(s.bookmarks_vs_users.less, 0.0);
  EXPECT_DOUBLE_EQ(s.bookmarks_vs_resources.less, 0.0);
}
