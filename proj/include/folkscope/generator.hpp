#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "folkscope/folksonomy.hpp"

namespace folkscope {

// Where accepted tag suggestions come from.
enum class SuggestionRegime { resource_based, personomy_based, none };

SuggestionRegime parse_regime(std::string_view name);
std::string regime_name(SuggestionRegime r);

struct RegimeConfig {
  SuggestionRegime regime = SuggestionRegime::none;
  std::size_t users = 200;
  std::size_t resources = 50;
  std::size_t bookmarks_per_user_min = 25;
  std::size_t bookmarks_per_user_max = 25;
  std::size_t tags_per_bookmark_min = 1;
  std::size_t tags_per_bookmark_max = 5;
  std::size_t tag_pool = 1000;
  // chance that a tag slot takes a suggestion (resource history or the
  // user's own history, depending on the regime)
  double acceptance = 0.5;
  // exponent of the per-user power-law preference over the pool
  double zipf_exponent = 1.0;
  // chance that a non-suggested tag is drawn uniformly from the whole pool
  double fresh_tag_probability = 0.0;
  // > 0 attaches a category to every resource; each category owns
  // `topic_tags` pool tags drawn with probability `topic_strength`
  std::size_t categories = 0;
  std::size_t topic_tags = 20;
  double topic_strength = 0.5;
  std::uint64_t seed = 1;

  // Throws InvalidArgument for impossible combinations.
  void validate() const;
};

// key=value lines; '#' starts a comment. Unknown keys are rejected.
RegimeConfig parse_regime_config(std::istream& in, RegimeConfig base = {});
void apply_regime_setting(RegimeConfig& cfg, std::string_view key, std::string_view value);
std::string format_regime_config(const RegimeConfig& cfg);

struct GeneratedCorpus {
  std::vector<Bookmark> bookmarks;  // generation order
  std::vector<CategoryAssignment> categories;
};

// Deterministic for a fixed seed.
GeneratedCorpus generate(const RegimeConfig& cfg);

}  // namespace folkscope
