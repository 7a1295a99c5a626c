#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace folkscope {

// One user's annotation of one resource. Tags are opaque, case-sensitive
// byte strings.
struct Bookmark {
  std::string user;
  std::string resource;
  std::vector<std::string> tags;
  std::optional<std::uint64_t> order;

  bool annotated() const noexcept { return !tags.empty(); }
  bool operator==(const Bookmark&) const = default;
};

struct TagFrequency {
  std::size_t resources = 0;  // rf
  std::size_t users = 0;      // uf
  std::size_t bookmarks = 0;  // bf
  bool operator==(const TagFrequency&) const = default;
};

struct ResourceEntry {
  // tag -> number of annotating users (w_t)
  std::map<std::string, std::size_t, std::less<>> weights;
  // annotated bookmarks on this resource (p)
  std::size_t annotators = 0;
  // sum of weights, i.e. (bookmark, tag) pairs after dedup
  std::size_t assignments = 0;
  // indices into Folksonomy::bookmarks(), sorted by timeline position
  std::vector<std::size_t> timeline;
  // true when at least one bookmark lacked an explicit order
  bool synthetic_order = false;

  bool operator==(const ResourceEntry&) const = default;
};

struct IngestReport {
  std::size_t records = 0;
  std::size_t bookmarks = 0;
  std::size_t annotated_bookmarks = 0;
  std::size_t users = 0;
  std::size_t annotated_users = 0;
  std::size_t resources = 0;
  std::size_t annotated_resources = 0;
  std::size_t duplicate_bookmarks = 0;
  std::size_t duplicate_tags = 0;
  std::size_t synthetic_order_resources = 0;

  bool operator==(const IngestReport&) const = default;
};

// Indexed, immutable bookmark collection. Only annotated bookmarks
// contribute to weights, frequencies and totals.
class Folksonomy {
 public:
  Folksonomy() = default;

  static Folksonomy ingest(std::vector<Bookmark> records);

  const std::vector<Bookmark>& bookmarks() const noexcept { return bookmarks_; }
  const std::map<std::string, ResourceEntry, std::less<>>& resources() const noexcept {
    return resources_;
  }
  // user -> indices of their bookmarks (annotated or not), in stream order
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& users() const noexcept {
    return users_;
  }
  const std::map<std::string, TagFrequency, std::less<>>& tag_frequencies() const noexcept {
    return tags_;
  }

  // Throws InvalidArgument on unknown ids.
  const ResourceEntry& resource(std::string_view id) const;
  const TagFrequency& frequency(std::string_view tag) const;
  const ResourceEntry* find_resource(std::string_view id) const noexcept;

  // |R|, |U|, |B| over annotated entities.
  std::size_t resource_count() const noexcept { return report_.annotated_resources; }
  std::size_t user_count() const noexcept { return report_.annotated_users; }
  std::size_t bookmark_count() const noexcept { return report_.annotated_bookmarks; }

  const IngestReport& report() const noexcept { return report_; }

  bool operator==(const Folksonomy&) const = default;

 private:
  std::vector<Bookmark> bookmarks_;
  std::map<std::string, ResourceEntry, std::less<>> resources_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> users_;
  std::map<std::string, TagFrequency, std::less<>> tags_;
  IngestReport report_;
};

// Parses one line-delimited record: {"user":..,"resource":..,"tags":[..],"order":n}.
Bookmark parse_bookmark(std::string_view line, std::size_t line_number);
// Blank lines are skipped; malformed lines raise ParseError with the line.
std::vector<Bookmark> read_bookmarks(std::istream& in);
std::vector<Bookmark> read_bookmarks_file(const std::string& path);
std::string format_bookmark(const Bookmark& b);
void write_bookmarks(std::ostream& out, const std::vector<Bookmark>& records);

const std::set<std::string, std::less<>>& default_reading_state_tags();

// Drops every occurrence of a blocked tag from each record.
std::vector<Bookmark> strip_reading_state(std::vector<Bookmark> records,
                                          const std::set<std::string, std::less<>>& blocked);

// Resources with p(r) >= min_users.
std::set<std::string> filter_popular(const Folksonomy& f, std::size_t min_users);

enum class CategoryLevel { top, second };

struct CategoryAssignment {
  std::string resource;
  std::string top;
  std::optional<std::string> second;
  bool operator==(const CategoryAssignment&) const = default;
};

// Label of the assignment at a level. Second-level labels are qualified by
// their parent ("top/second") so equal child names under different parents
// stay distinct. nullopt when the assignment has no second level.
std::optional<std::string> category_label(const CategoryAssignment& a, CategoryLevel level);

// `resource<TAB>top<TAB>second` lines, second may be empty or missing.
std::vector<CategoryAssignment> read_categories(std::istream& in);
std::vector<CategoryAssignment> read_categories_file(const std::string& path);

struct PruneResult {
  std::vector<CategoryAssignment> kept;
  // category label -> resources removed with it
  std::map<std::string, std::size_t> removed;
  // resources dropped because they carry no label at the requested level
  std::size_t unlabeled_at_level = 0;
};

PruneResult prune_small_categories(const std::vector<CategoryAssignment>& labels,
                                   CategoryLevel level, std::size_t min_resources);

struct NoveltyPoint {
  std::size_t rank;  // 1-based among annotated bookmarks
  double ratio;
};

// Share of new tags each bookmark introduces into the resource. Refuses
// resources whose ordering was synthesized at ingest unless allowed.
std::vector<NoveltyPoint> novelty_ratios(const Folksonomy& f, std::string_view resource,
                                         bool allow_synthetic_order = false);

// Average novelty per rank over all resources, ranks 1..max_rank.
std::vector<double> mean_novelty_by_rank(const Folksonomy& f, std::size_t max_rank,
                                         bool allow_synthetic_order = false);

// Mean ratio over every (resource, rank >= 2) point.
double mean_novelty(const Folksonomy& f, bool allow_synthetic_order = false);

struct RelationBuckets {
  // percentages of tags with lhs > rhs, lhs == rhs, lhs < rhs
  double greater = 0, equal = 0, less = 0;
};

struct CorpusStatistics {
  IngestReport ingest;
  std::size_t tags = 0;
  double tags_per_resource = 0;
  double tags_per_user = 0;
  double tags_per_bookmark = 0;
  // percentage of resources/users/bookmarks the tag at each global rank
  // (index 0 = rank 1) appears on, each dimension ranked on its own
  std::vector<double> usage_resources;
  std::vector<double> usage_users;
  std::vector<double> usage_bookmarks;
  // mean of w_(i)/w_(1) over resources with at least i tags
  std::vector<double> within_resource_popularity;
  RelationBuckets bookmarks_vs_users;
  RelationBuckets resources_vs_users;
  RelationBuckets bookmarks_vs_resources;
};

CorpusStatistics corpus_statistics(const Folksonomy& f);

}  // namespace folkscope
