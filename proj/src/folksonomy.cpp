#include "folkscope/folksonomy.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "folkscope/error.hpp"
#include "json.hpp"

namespace folkscope {

using nlohmann::json;

namespace {

struct UserResource {
  std::string_view user;
  std::string_view resource;
  bool operator==(const UserResource&) const = default;
};

struct UserResourceHash {
  std::size_t operator()(const UserResource& k) const noexcept {
    std::size_t h = std::hash<std::string_view>{}(k.user);
    return h ^ (std::hash<std::string_view>{}(k.resource) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

Folksonomy Folksonomy::ingest(std::vector<Bookmark> records) {
  Folksonomy f;
  f.report_.records = records.size();

  // Records are moved into storage first so index keys can view them.
  std::vector<Bookmark> kept;
  kept.reserve(records.size());
  {
    std::unordered_set<std::string> seen_pairs;
    for (auto& b : records) {
      std::string key = b.user;
      key.push_back('\0');
      key += b.resource;
      if (!seen_pairs.insert(std::move(key)).second) {
        ++f.report_.duplicate_bookmarks;
        continue;
      }
      std::vector<std::string> unique;
      unique.reserve(b.tags.size());
      std::unordered_set<std::string_view> seen_tags;
      for (auto& t : b.tags) {
        if (seen_tags.contains(t)) {
          ++f.report_.duplicate_tags;
          continue;
        }
        unique.push_back(std::move(t));
        seen_tags.insert(unique.back());
      }
      b.tags = std::move(unique);
      kept.push_back(std::move(b));
    }
  }
  f.bookmarks_ = std::move(kept);

  // Per tag, the distinct users and resources it has been seen with.
  std::map<std::string_view, std::pair<std::unordered_set<std::string_view>,
                                       std::unordered_set<std::string_view>>>
      tag_spread;
  std::map<std::string_view, std::uint64_t> next_position;

  for (std::size_t i = 0; i < f.bookmarks_.size(); ++i) {
    const Bookmark& b = f.bookmarks_[i];
    auto& user = f.users_[b.user];
    user.push_back(i);
    auto& entry = f.resources_[b.resource];
    entry.timeline.push_back(i);
    if (!b.order) entry.synthetic_order = true;
    if (!b.annotated()) continue;
    ++entry.annotators;
    for (const auto& t : b.tags) {
      ++entry.weights[t];
      ++entry.assignments;
      ++f.tags_[t].bookmarks;
      auto& spread = tag_spread[t];
      spread.first.insert(b.user);
      spread.second.insert(b.resource);
    }
  }
  for (const auto& [tag, spread] : tag_spread) {
    auto it = f.tags_.find(tag);
    it->second.users = spread.first.size();
    it->second.resources = spread.second.size();
  }

  f.report_.bookmarks = f.bookmarks_.size();
  for (auto& [id, entry] : f.resources_) {
    // Missing orders fall back to stream position within the resource.
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
    keyed.reserve(entry.timeline.size());
    for (std::size_t pos = 0; pos < entry.timeline.size(); ++pos) {
      const Bookmark& b = f.bookmarks_[entry.timeline[pos]];
      keyed.emplace_back(b.order.value_or(pos), entry.timeline[pos]);
    }
    std::stable_sort(keyed.begin(), keyed.end());
    for (std::size_t pos = 0; pos < keyed.size(); ++pos) entry.timeline[pos] = keyed[pos].second;
    if (entry.synthetic_order) ++f.report_.synthetic_order_resources;
    if (entry.annotators > 0) ++f.report_.annotated_resources;
  }
  f.report_.resources = f.resources_.size();
  f.report_.users = f.users_.size();
  for (const auto& [id, idx] : f.users_) {
    if (std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return f.bookmarks_[i].annotated(); })) {
      ++f.report_.annotated_users;
    }
  }
  f.report_.annotated_bookmarks = static_cast<std::size_t>(std::count_if(
      f.bookmarks_.begin(), f.bookmarks_.end(), [](const Bookmark& b) { return b.annotated(); }));
  return f;
}

const ResourceEntry* Folksonomy::find_resource(std::string_view id) const noexcept {
  auto it = resources_.find(id);
  return it == resources_.end() ? nullptr : &it->second;
}

const ResourceEntry& Folksonomy::resource(std::string_view id) const {
  if (const auto* e = find_resource(id)) return *e;
  throw InvalidArgument("unknown resource '" + std::string(id) + "'");
}

const TagFrequency& Folksonomy::frequency(std::string_view tag) const {
  auto it = tags_.find(tag);
  if (it == tags_.end()) throw InvalidArgument("unknown tag '" + std::string(tag) + "'");
  return it->second;
}

Bookmark parse_bookmark(std::string_view line, std::size_t line_number) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  if (!doc.is_object()) throw ParseError("record is not an object", line_number);

  Bookmark b;
  auto text_field = [&](const char* name) {
    auto it = doc.find(name);
    if (it == doc.end() || !it->is_string()) {
      throw ParseError(std::string("missing string field '") + name + "'", line_number);
    }
    return it->get<std::string>();
  };
  b.user = text_field("user");
  b.resource = text_field("resource");

  auto tags = doc.find("tags");
  if (tags == doc.end() || !tags->is_array()) {
    throw ParseError("missing array field 'tags'", line_number);
  }
  for (const auto& t : *tags) {
    if (!t.is_string()) throw ParseError("tags must be strings", line_number);
    b.tags.push_back(t.get<std::string>());
  }
  if (auto order = doc.find("order"); order != doc.end() && !order->is_null()) {
    if (!order->is_number_unsigned()) {
      throw ParseError("order must be a non-negative integer", line_number);
    }
    b.order = order->get<std::uint64_t>();
  }
  return b;
}

std::vector<Bookmark> read_bookmarks(std::istream& in) {
  std::vector<Bookmark> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_bookmark(line, n));
  }
  return out;
}

std::vector<Bookmark> read_bookmarks_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bookmark file '" + path + "'");
  return read_bookmarks(in);
}

std::string format_bookmark(const Bookmark& b) {
  json doc = {{"user", b.user}, {"resource", b.resource}, {"tags", b.tags}};
  if (b.order) doc["order"] = *b.order;
  return doc.dump();
}

void write_bookmarks(std::ostream& out, const std::vector<Bookmark>& records) {
  for (const auto& b : records) out << format_bookmark(b) << '\n';
}

const std::set<std::string, std::less<>>& default_reading_state_tags() {
  static const std::set<std::string, std::less<>> tags{"read", "currently-reading", "to-read"};
  return tags;
}

std::vector<Bookmark> strip_reading_state(std::vector<Bookmark> records,
                                          const std::set<std::string, std::less<>>& blocked) {
  if (blocked.empty()) return records;
  for (auto& b : records) {
    std::erase_if(b.tags, [&](const std::string& t) { return blocked.contains(t); });
  }
  return records;
}

std::set<std::string> filter_popular(const Folksonomy& f, std::size_t min_users) {
  if (min_users < 1) throw InvalidArgument("min_users must be >= 1");
  std::set<std::string> out;
  for (const auto& [id, entry] : f.resources()) {
    if (entry.annotators > 0 && entry.annotators >= min_users) out.insert(id);
  }
  return out;
}

std::optional<std::string> category_label(const CategoryAssignment& a, CategoryLevel level) {
  if (level == CategoryLevel::top) return a.top;
  if (!a.second) return std::nullopt;
  return a.top + "/" + *a.second;
}

std::vector<CategoryAssignment> read_categories(std::istream& in) {
  std::vector<CategoryAssignment> out;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("expected resource<TAB>top<TAB>second", n);
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("resource and top category must be non-empty", n);
    }
    if (!seen.insert(fields[0]).second) {
      throw ParseError("resource '" + fields[0] + "' categorized twice", n);
    }
    CategoryAssignment a{fields[0], fields[1], std::nullopt};
    if (fields.size() == 3 && !fields[2].empty()) a.second = fields[2];
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<CategoryAssignment> read_categories_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open category file '" + path + "'");
  return read_categories(in);
}

PruneResult prune_small_categories(const std::vector<CategoryAssignment>& labels,
                                   CategoryLevel level, std::size_t min_resources) {
  if (min_resources < 1) throw InvalidArgument("min_resources must be >= 1");
  std::map<std::string, std::size_t> sizes;
  for (const auto& a : labels) {
    if (auto label = category_label(a, level)) ++sizes[*label];
  }
  PruneResult result;
  for (const auto& a : labels) {
    auto label = category_label(a, level);
    if (!label) {
      ++result.unlabeled_at_level;
      continue;
    }
    if (sizes[*label] < min_resources) {
      ++result.removed[*label];
      continue;
    }
    result.kept.push_back(a);
  }
  return result;
}

namespace {

std::vector<NoveltyPoint> novelty_of(const Folksonomy& f, std::string_view id,
                                     const ResourceEntry& entry, bool allow_synthetic) {
  if (entry.synthetic_order && !allow_synthetic) {
    throw InvalidArgument("novelty statistics need bookmark ordering; resource '" + std::string(id) +
                          "' has bookmarks without an 'order' field (use --allow-synthetic-order "
                          "to fall back to stream position)");
  }
  std::vector<NoveltyPoint> out;
  std::unordered_set<std::string_view> seen;
  std::size_t rank = 0;
  for (std::size_t idx : entry.timeline) {
    const Bookmark& b = f.bookmarks()[idx];
    if (!b.annotated()) continue;
    ++rank;
    std::size_t fresh = 0;
    for (const auto& t : b.tags) fresh += seen.contains(t) ? 0 : 1;
    for (const auto& t : b.tags) seen.insert(t);
    out.push_back({rank, static_cast<double>(fresh) / static_cast<double>(b.tags.size())});
  }
  return out;
}

}  // namespace

std::vector<NoveltyPoint> novelty_ratios(const Folksonomy& f, std::string_view resource,
                                         bool allow_synthetic_order) {
  return novelty_of(f, resource, f.resource(resource), allow_synthetic_order);
}

std::vector<double> mean_novelty_by_rank(const Folksonomy& f, std::size_t max_rank,
                                         bool allow_synthetic_order) {
  std::vector<double> sum(max_rank, 0.0);
  std::vector<std::size_t> count(max_rank, 0);
  for (const auto& [id, entry] : f.resources()) {
    for (const auto& p : novelty_of(f, id, entry, allow_synthetic_order)) {
      if (p.rank > max_rank) break;
      sum[p.rank - 1] += p.ratio;
      ++count[p.rank - 1];
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < max_rank && count[i] > 0; ++i) {
    out.push_back(sum[i] / static_cast<double>(count[i]));
  }
  return out;
}

double mean_novelty(const Folksonomy& f, bool allow_synthetic_order) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [id, entry] : f.resources()) {
    for (const auto& p : novelty_of(f, id, entry, allow_synthetic_order)) {
      if (p.rank < 2) continue;
      sum += p.ratio;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

CorpusStatistics corpus_statistics(const Folksonomy& f) {
  CorpusStatistics s;
  s.ingest = f.report();
  s.tags = f.tag_frequencies().size();

  std::size_t resource_tags = 0;
  std::size_t max_tags = 0;
  for (const auto& [id, entry] : f.resources()) {
    resource_tags += entry.weights.size();
    max_tags = std::max(max_tags, entry.weights.size());
  }
  s.tags_per_resource =
      f.resource_count() ? static_cast<double>(resource_tags) / static_cast<double>(f.resource_count()) : 0.0;

  std::size_t user_tags = 0;
  for (const auto& [id, idx] : f.users()) {
    std::unordered_set<std::string_view> vocab;
    for (std::size_t i : idx) {
      for (const auto& t : f.bookmarks()[i].tags) vocab.insert(t);
    }
    user_tags += vocab.size();
  }
  s.tags_per_user =
      f.user_count() ? static_cast<double>(user_tags) / static_cast<double>(f.user_count()) : 0.0;

  std::size_t bookmark_tags = 0;
  for (const auto& b : f.bookmarks()) bookmark_tags += b.tags.size();
  s.tags_per_bookmark =
      f.bookmark_count() ? static_cast<double>(bookmark_tags) / static_cast<double>(f.bookmark_count()) : 0.0;

  std::vector<std::size_t> rf, uf, bf;
  for (const auto& [tag, fr] : f.tag_frequencies()) {
    rf.push_back(fr.resources);
    uf.push_back(fr.users);
    bf.push_back(fr.bookmarks);
  }
  auto usage = [](std::vector<std::size_t> v, std::size_t total) {
    std::sort(v.begin(), v.end(), std::greater<>());
    std::vector<double> out;
    out.reserve(v.size());
    for (auto c : v) out.push_back(percent(c, total));
    return out;
  };
  s.usage_resources = usage(rf, f.resource_count());
  s.usage_users = usage(uf, f.user_count());
  s.usage_bookmarks = usage(bf, f.bookmark_count());

  std::vector<double> pop_sum(max_tags, 0.0);
  std::vector<std::size_t> pop_count(max_tags, 0);
  for (const auto& [id, entry] : f.resources()) {
    if (entry.weights.empty()) continue;
    std::vector<std::size_t> w;
    for (const auto& [t, c] : entry.weights) w.push_back(c);
    std::sort(w.begin(), w.end(), std::greater<>());
    for (std::size_t i = 0; i < w.size(); ++i) {
      pop_sum[i] += static_cast<double>(w[i]) / static_cast<double>(w[0]);
      ++pop_count[i];
    }
  }
  for (std::size_t i = 0; i < max_tags; ++i) {
    s.within_resource_popularity.push_back(pop_sum[i] / static_cast<double>(pop_count[i]));
  }

  auto buckets = [&](const std::vector<std::size_t>& lhs, const std::vector<std::size_t>& rhs) {
    std::size_t gt = 0, eq = 0, lt = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (lhs[i] > rhs[i]) ++gt;
      else if (lhs[i] == rhs[i]) ++eq;
      else ++lt;
    }
    return RelationBuckets{percent(gt, lhs.size()), percent(eq, lhs.size()), percent(lt, lhs.size())};
  };
  s.bookmarks_vs_users = buckets(bf, uf);
  s.resources_vs_users = buckets(rf, uf);
  s.bookmarks_vs_resources = buckets(bf, rf);
  return s;
}

}  // namespace folkscope
