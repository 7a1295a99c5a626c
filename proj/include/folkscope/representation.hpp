#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folkscope/folksonomy.hpp"

namespace folkscope {

using FeatureId = std::uint32_t;

struct FeatureEntry {
  FeatureId id;
  double weight;
  bool operator==(const FeatureEntry&) const = default;
};

// Sparse vector, entries sorted by id, zero weights never stored.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(const std::map<FeatureId, double>& weights);
  // Entries need not be sorted; duplicate ids are summed.
  static FeatureVector from_entries(std::vector<FeatureEntry> entries);

  std::span<const FeatureEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  // 0 when the id is absent.
  double weight(FeatureId id) const noexcept;
  FeatureId max_id() const noexcept { return entries_.empty() ? 0 : entries_.back().id; }

  // Dot product against a dense row; ids beyond the row are ignored.
  double dot(std::span<const double> dense) const noexcept;
  double dot(const FeatureVector& other) const noexcept;
  double norm() const noexcept;

  bool operator==(const FeatureVector&) const = default;

 private:
  std::vector<FeatureEntry> entries_;
};

// Token <-> dense feature id, with document frequencies. Ids follow
// lexicographic token order.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Tokens must be sorted and unique; df entries >= 1.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> document_frequency,
             std::size_t documents);

  // Each document is a token multiset. Tokens whose document frequency is
  // below ceil(min_df_fraction * |D|) are dropped.
  static Vocabulary build(std::span<const std::vector<std::string>> documents,
                          double min_df_fraction);

  std::optional<FeatureId> find(std::string_view token) const noexcept;
  const std::string& token(FeatureId id) const { return tokens_.at(id); }
  std::size_t document_frequency(FeatureId id) const { return df_.at(id); }
  std::size_t documents() const noexcept { return documents_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::vector<std::size_t>& document_frequencies() const noexcept { return df_; }

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> df_;
  std::map<std::string, FeatureId, std::less<>> index_;
  std::size_t documents_ = 0;
};

enum class TagWeighting { ranks, fractions, unweighted, weighted };

struct RepresentationScheme {
  TagWeighting weighting = TagWeighting::weighted;
  bool top_k = false;  // false: full tagging activity (all tags)
  std::size_t k = 10;

  bool operator==(const RepresentationScheme&) const = default;
};

// Accepts ranks-topk, fractions-topk, fractions-fta, unweighted-topk,
// unweighted-fta, weighted-topk, weighted-fta.
RepresentationScheme parse_representation(std::string_view name, std::size_t k = 10);
std::string representation_name(const RepresentationScheme& scheme);

// Highest counts first, ties by ascending tag; at most k entries.
std::vector<std::pair<std::string, std::size_t>> top_k_tags(
    const std::map<std::string, std::size_t, std::less<>>& weights, std::size_t k);

// Tag vocabulary over the given resources (one document per resource, its
// distinct tags).
Vocabulary build_tag_vocabulary(const Folksonomy& f, std::span<const std::string> resources,
                                double min_df_fraction = 0.0);

// Tags outside the vocabulary are dropped. A resource with no annotated
// bookmarks yields an empty vector.
FeatureVector represent_resource(const Folksonomy& f, std::string_view resource,
                                 const RepresentationScheme& scheme, const Vocabulary& vocab);

struct TextPipelineConfig {
  bool lowercase = true;
  bool stem = true;
  std::set<std::string, std::less<>> stopwords;

  bool operator==(const TextPipelineConfig&) const = default;
};

std::set<std::string, std::less<>> read_stopwords(std::istream& in);
std::set<std::string, std::less<>> read_stopwords_file(const std::string& path);
const std::set<std::string, std::less<>>& english_stopwords();

// Porter (1980) suffix stripping. Expects a lowercase word.
std::string porter_stem(std::string_view word);

// Splits on non-alphanumeric ASCII bytes (bytes >= 0x80 stay inside
// tokens), then lowercases, drops stopwords and stems per config.
std::vector<std::string> text_tokens(std::string_view text, const TextPipelineConfig& cfg);

// tf * ln(|D| / df) for every in-vocabulary token.
FeatureVector represent_text(std::string_view text, const Vocabulary& vocab,
                             const TextPipelineConfig& cfg);
// Raw term counts for in-vocabulary tokens.
FeatureVector term_frequencies(std::string_view text, const Vocabulary& vocab,
                               const TextPipelineConfig& cfg);

// `resource<TAB>id:weight id:weight ...` with round-trip precision.
std::string format_vector_line(std::string_view resource, const FeatureVector& v);
std::pair<std::string, FeatureVector> parse_vector_line(std::string_view line, std::size_t line_number);
void write_vectors(std::ostream& out,
                   const std::vector<std::pair<std::string, FeatureVector>>& rows);
std::vector<std::pair<std::string, FeatureVector>> read_vectors(std::istream& in);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace folkscope
