#include <gtest/gtest.h>

#include <sstream>

#include "folkscope/error.hpp"
#include "folkscope/generator.hpp"

using namespace folkscope;

namespace {

RegimeConfig small(SuggestionRegime r, std::uint64_t seed) {
  RegimeConfig c;
  c.regime = r;
  c.users = 30;
  c.resources = 10;
  c.bookmarks_per_user_min = 3;
  c.bookmarks_per_user_max = 8;
  c.tag_pool = 100;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Generator, SameSeedSameStream) {
  auto a = generate(small(SuggestionRegime::resource_based, 4));
  auto b = generate(small(SuggestionRegime::resource_based, 4));
  EXPECT_EQ(a.bookmarks, b.bookmarks);
  EXPECT_NE(a.bookmarks, generate(small(SuggestionRegime::resource_based, 5)).bookmarks);
}

TEST(Generator, ZeroAcceptanceMakesRegimesIdentical) {
  auto base = small(SuggestionRegime::none, 9);
  base.acceptance = 0.0;
  auto none = generate(base);
  base.regime = SuggestionRegime::resource_based;
  auto rb = generate(base);
  base.regime = SuggestionRegime::personomy_based;
  auto pb = generate(base);
  EXPECT_EQ(none.bookmarks, rb.bookmarks);
  EXPECT_EQ(none.bookmarks, pb.bookmarks);
}

TEST(Generator, RespectsShapeParameters) {
  auto cfg = small(SuggestionRegime::personomy_based, 2);
  cfg.categories = 3;
  auto out = generate(cfg);
  std::map<std::string, std::set<std::string>> per_user;
  for (const auto& b : out.bookmarks) {
    EXPECT_GE(b.tags.size(), cfg.tags_per_bookmark_min);
    EXPECT_LE(b.tags.size(), cfg.tags_per_bookmark_max);
    EXPECT_TRUE(per_user[b.user].insert(b.resource).second) << "repeated (user, resource)";
    EXPECT_TRUE(b.order.has_value());
  }
  EXPECT_EQ(per_user.size(), cfg.users);
  for (const auto& [u, rs] : per_user) {
    EXPECT_GE(rs.size(), cfg.bookmarks_per_user_min);
    EXPECT_LE(rs.size(), cfg.bookmarks_per_user_max);
  }
  EXPECT_EQ(out.categories.size(), cfg.resources);
}

TEST(Generator, ValidationErrors) {
  RegimeConfig c;
  c.tag_pool = 3;  // fewer than tags_per_bookmark_max
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = RegimeConfig{};
  c.bookmarks_per_user_max = c.resources + 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = RegimeConfig{};
  c.acceptance = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(RegimeConfig, ParseFormatRoundTrip) {
  std::istringstream in("# comment\nregime = resource-based\nusers=12\nacceptance = 0.25\nbookmarks_per_user = 4\n");
  auto c = parse_regime_config(in);
  EXPECT_EQ(c.regime, SuggestionRegime::resource_based);
  EXPECT_EQ(c.users, 12u);
  EXPECT_EQ(c.acceptance, 0.25);
  EXPECT_EQ(c.bookmarks_per_user_min, 4u);
  EXPECT_EQ(c.bookmarks_per_user_max, 4u);
  std::istringstream again(format_regime_config(c));
  auto d = parse_regime_config(again);
  EXPECT_EQ(format_regime_config(d), format_regime_config(c));
}

TEST(RegimeConfig, UnknownKeyNamesLine) {
  std::istringstream in("users=3\nwarp=9\n");
  try {
    parse_regime_config(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  RegimeConfig c;
  EXPECT_THROW(apply_regime_setting(c, "users", "many"), InvalidArgument);
  EXPECT_EQ(parse_regime("personomy"), SuggestionRegime::personomy_based);
  EXPECT_THROW(parse_regime("random"), InvalidArgument);
}
