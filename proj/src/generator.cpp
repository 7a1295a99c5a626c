#include "folkscope/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "folkscope/error.hpp"
#include "random.hpp"

namespace folkscope {

SuggestionRegime parse_regime(std::string_view name) {
  if (name == "resource-based" || name == "resource") return SuggestionRegime::resource_based;
  if (name == "personomy-based" || name == "personomy") return SuggestionRegime::personomy_based;
  if (name == "none") return SuggestionRegime::none;
  throw InvalidArgument("unknown regime '" + std::string(name) + "' (resource-based|personomy-based|none)");
}

std::string regime_name(SuggestionRegime r) {
  switch (r) {
    case SuggestionRegime::resource_based: return "resource-based";
    case SuggestionRegime::personomy_based: return "personomy-based";
    case SuggestionRegime::none: return "none";
  }
  return "none";
}

void RegimeConfig::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  };
  if (users < 1 || resources < 1 || tag_pool < 1) {
    throw InvalidArgument("users, resources and tag_pool must be >= 1");
  }
  if (bookmarks_per_user_min < 1 || bookmarks_per_user_min > bookmarks_per_user_max) {
    throw InvalidArgument("bookmarks per user needs 1 <= min <= max");
  }
  if (bookmarks_per_user_max > resources) {
    throw InvalidArgument("a user cannot bookmark more distinct resources (" +
                          std::to_string(bookmarks_per_user_max) + ") than exist (" +
                          std::to_string(resources) + ")");
  }
  if (tags_per_bookmark_min < 1 || tags_per_bookmark_min > tags_per_bookmark_max) {
    throw InvalidArgument("tags per bookmark needs 1 <= min <= max");
  }
  if (tags_per_bookmark_max > tag_pool) {
    throw InvalidArgument("tag pool (" + std::to_string(tag_pool) + ") is smaller than the " +
                          std::to_string(tags_per_bookmark_max) + " distinct tags a bookmark may demand");
  }
  if (categories > 0 && (topic_tags < 1 || categories * topic_tags > tag_pool)) {
    throw InvalidArgument("categories * topic_tags must fit in the tag pool");
  }
  probability(acceptance, "acceptance");
  probability(fresh_tag_probability, "fresh_tag_probability");
  probability(topic_strength, "topic_strength");
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) {
    throw InvalidArgument("zipf_exponent must be >= 0");
  }
}

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw InvalidArgument("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_regime_setting(RegimeConfig& cfg, std::string_view key, std::string_view value) {
  using sz = std::size_t;
  if (key == "regime") cfg.regime = parse_regime(value);
  else if (key == "users") cfg.users = parse_number<sz>(key, value);
  else if (key == "resources") cfg.resources = parse_number<sz>(key, value);
  else if (key == "bookmarks_per_user") cfg.bookmarks_per_user_min = cfg.bookmarks_per_user_max = parse_number<sz>(key, value);
  else if (key == "bookmarks_per_user_min") cfg.bookmarks_per_user_min = parse_number<sz>(key, value);
  else if (key == "bookmarks_per_user_max") cfg.bookmarks_per_user_max = parse_number<sz>(key, value);
  else if (key == "tags_per_bookmark_min") cfg.tags_per_bookmark_min = parse_number<sz>(key, value);
  else if (key == "tags_per_bookmark_max") cfg.tags_per_bookmark_max = parse_number<sz>(key, value);
  else if (key == "tag_pool") cfg.tag_pool = parse_number<sz>(key, value);
  else if (key == "acceptance") cfg.acceptance = parse_number<double>(key, value);
  else if (key == "zipf_exponent") cfg.zipf_exponent = parse_number<double>(key, value);
  else if (key == "fresh_tag_probability") cfg.fresh_tag_probability = parse_number<double>(key, value);
  else if (key == "categories") cfg.categories = parse_number<sz>(key, value);
  else if (key == "topic_tags") cfg.topic_tags = parse_number<sz>(key, value);
  else if (key == "topic_strength") cfg.topic_strength = parse_number<double>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else throw InvalidArgument("unknown generator setting '" + std::string(key) + "'");
}

RegimeConfig parse_regime_config(std::istream& in, RegimeConfig base) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", n);
    try {
      apply_regime_setting(base, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), n);
    }
  }
  return base;
}

std::string format_regime_config(const RegimeConfig& c) {
  std::ostringstream out;
  out << "regime=" << regime_name(c.regime) << '\n'
      << "users=" << c.users << '\n'
      << "resources=" << c.resources << '\n'
      << "bookmarks_per_user_min=" << c.bookmarks_per_user_min << '\n'
      << "bookmarks_per_user_max=" << c.bookmarks_per_user_max << '\n'
      << "tags_per_bookmark_min=" << c.tags_per_bookmark_min << '\n'
      << "tags_per_bookmark_max=" << c.tags_per_bookmark_max << '\n'
      << "tag_pool=" << c.tag_pool << '\n'
      << "acceptance=" << c.acceptance << '\n'
      << "zipf_exponent=" << c.zipf_exponent << '\n'
      << "fresh_tag_probability=" << c.fresh_tag_probability << '\n'
      << "categories=" << c.categories << '\n'
      << "topic_tags=" << c.topic_tags << '\n'
      << "topic_strength=" << c.topic_strength << '\n'
      << "seed=" << c.seed << '\n';
  return out.str();
}

namespace {

using detail::Rng;

// Inverse-CDF sampling of rank i with probability proportional to 1/i^s.
class PowerLaw {
 public:
  PowerLaw(std::size_t n, double exponent) : cdf_(n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cdf_[i] = acc;
    }
  }
  std::size_t sample(Rng& rng) const {
    const double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string padded(char prefix, std::size_t i, std::size_t count) {
  const std::size_t width = std::to_string(count == 0 ? 0 : count - 1).size();
  std::string digits = std::to_string(i);
  return std::string(1, prefix) + std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace

GeneratedCorpus generate(const RegimeConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  GeneratedCorpus out;

  std::vector<std::string> tag_names(cfg.tag_pool);
  for (std::size_t t = 0; t < cfg.tag_pool; ++t) tag_names[t] = padded('t', t, cfg.tag_pool);

  // Each user ranks the pool privately; draws follow the power law over it.
  std::vector<std::vector<std::size_t>> preference(cfg.users);
  for (auto& order : preference) {
    order.resize(cfg.tag_pool);
    for (std::size_t t = 0; t < cfg.tag_pool; ++t) order[t] = t;
    rng.shuffle(order);
  }
  const PowerLaw pool_law(cfg.tag_pool, cfg.zipf_exponent);
  const PowerLaw topic_law(cfg.categories > 0 ? cfg.topic_tags : 1, cfg.zipf_exponent);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (user, resource)
  std::vector<std::size_t> resource_ids(cfg.resources);
  for (std::size_t u = 0; u < cfg.users; ++u) {
    for (std::size_t r = 0; r < cfg.resources; ++r) resource_ids[r] = r;
    const std::size_t n = rng.between(cfg.bookmarks_per_user_min, cfg.bookmarks_per_user_max);
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(resource_ids[i], resource_ids[i + rng.below(cfg.resources - i)]);
      pairs.emplace_back(u, resource_ids[i]);
    }
  }
  rng.shuffle(pairs);

  // Tag assignment histories, one entry per assignment so uniform picks are
  // proportional to usage counts.
  std::vector<std::vector<std::size_t>> resource_history(cfg.resources);
  std::vector<std::vector<std::size_t>> user_history(cfg.users);
  std::vector<std::uint64_t> resource_position(cfg.resources, 0);

  auto own_draw = [&](std::size_t user, std::size_t resource) {
    if (cfg.categories > 0 && rng.uniform() < cfg.topic_strength) {
      const std::size_t c = resource % cfg.categories;
      return c * cfg.topic_tags + topic_law.sample(rng);
    }
    if (rng.uniform() < cfg.fresh_tag_probability) return rng.below(cfg.tag_pool);
    return preference[user][pool_law.sample(rng)];
  };

  out.bookmarks.reserve(pairs.size());
  for (const auto& [user, resource] : pairs) {
    const std::size_t wanted = rng.between(cfg.tags_per_bookmark_min, cfg.tags_per_bookmark_max);
    std::vector<std::size_t> tags;
    std::unordered_set<std::size_t> used;
    for (std::size_t slot = 0; slot < wanted; ++slot) {
      std::size_t tag = cfg.tag_pool;
      for (int attempt = 0; attempt < 32 && tag == cfg.tag_pool; ++attempt) {
        // The suggestion coin is always flipped so that a zero acceptance
        // produces the same stream under every regime.
        const bool suggested = rng.uniform() < cfg.acceptance;
        std::size_t candidate;
        const auto& res_hist = resource_history[resource];
        const auto& usr_hist = user_history[user];
        if (suggested && cfg.regime == SuggestionRegime::resource_based && !res_hist.empty()) {
          candidate = res_hist[rng.below(res_hist.size())];
        } else if (suggested && cfg.regime == SuggestionRegime::personomy_based && !usr_hist.empty()) {
          candidate = usr_hist[rng.below(usr_hist.size())];
        } else {
          candidate = own_draw(user, resource);
        }
        if (!used.contains(candidate)) tag = candidate;
      }
      if (tag == cfg.tag_pool) {
        // Saturated draws: take the user's most preferred unused tag.
        for (std::size_t t : preference[user]) {
          if (!used.contains(t)) {
            tag = t;
            break;
          }
        }
      }
      used.insert(tag);
      tags.push_back(tag);
    }
    Bookmark b;
    b.user = padded('u', user, cfg.users);
    b.resource = padded('r', resource, cfg.resources);
    b.order = resource_position[resource]++;
    for (std::size_t t : tags) {
      b.tags.push_back(tag_names[t]);
      resource_history[resource].push_back(t);
      user_history[user].push_back(t);
    }
    out.bookmarks.push_back(std::move(b));
  }

  if (cfg.categories > 0) {
    for (std::size_t r = 0; r < cfg.resources; ++r) {
      out.categories.push_back({padded('r', r, cfg.resources), padded('c', r % cfg.categories, cfg.categories),
                                std::nullopt});
    }
  }
  return out;
}

}  // namespace folkscope
