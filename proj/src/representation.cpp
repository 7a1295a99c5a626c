#include "folkscope/representation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "folkscope/error.hpp"

namespace folkscope {

FeatureVector::FeatureVector(const std::map<FeatureId, double>& weights) {
  entries_.reserve(weights.size());
  for (const auto& [id, w] : weights) {
    if (w != 0.0) entries_.push_back({id, w});
  }
}

FeatureVector FeatureVector::from_entries(std::vector<FeatureEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FeatureEntry& a, const FeatureEntry& b) { return a.id < b.id; });
  FeatureVector v;
  for (const auto& e : entries) {
    if (!v.entries_.empty() && v.entries_.back().id == e.id) {
      v.entries_.back().weight += e.weight;
    } else {
      v.entries_.push_back(e);
    }
  }
  std::erase_if(v.entries_, [](const FeatureEntry& e) { return e.weight == 0.0; });
  return v;
}

double FeatureVector::weight(FeatureId id) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const FeatureEntry& e, FeatureId x) { return e.id < x; });
  return it != entries_.end() && it->id == id ? it->weight : 0.0;
}

double FeatureVector::dot(std::span<const double> dense) const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) {
    if (e.id < dense.size()) s += e.weight * dense[e.id];
  }
  return s;
}

double FeatureVector::dot(const FeatureVector& other) const noexcept {
  double s = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->id < b->id) ++a;
    else if (b->id < a->id) ++b;
    else s += (a++)->weight * (b++)->weight;
  }
  return s;
}

double FeatureVector::norm() const noexcept { return std::sqrt(dot(*this)); }

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> document_frequency,
                       std::size_t documents)
    : tokens_(std::move(tokens)), df_(std::move(document_frequency)), documents_(documents) {
  if (tokens_.size() != df_.size()) throw InvalidArgument("vocabulary token/df length mismatch");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i > 0 && !(tokens_[i - 1] < tokens_[i])) {
      throw InvalidArgument("vocabulary tokens must be sorted and unique");
    }
    if (df_[i] < 1) throw InvalidArgument("vocabulary document frequencies must be >= 1");
    index_.emplace(tokens_[i], static_cast<FeatureId>(i));
  }
}

Vocabulary Vocabulary::build(std::span<const std::vector<std::string>> documents,
                             double min_df_fraction) {
  if (!(min_df_fraction >= 0.0 && min_df_fraction < 1.0)) {
    throw InvalidArgument("min_df_fraction must lie in [0, 1)");
  }
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    std::unordered_set<std::string_view> distinct(doc.begin(), doc.end());
    for (auto t : distinct) ++df[std::string(t)];
  }
  // Guard against 0.005 * 1000 landing a hair above 5.
  const double raw = min_df_fraction * static_cast<double>(documents.size());
  const auto min_df = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  std::vector<std::string> tokens;
  std::vector<std::size_t> freq;
  for (auto& [t, n] : df) {
    if (n < min_df) continue;
    tokens.push_back(t);
    freq.push_back(n);
  }
  return Vocabulary(std::move(tokens), std::move(freq), documents.size());
}

std::optional<FeatureId> Vocabulary::find(std::string_view token) const noexcept {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RepresentationScheme parse_representation(std::string_view name, std::size_t k) {
  static const std::map<std::string_view, RepresentationScheme> known{
      {"ranks-topk", {TagWeighting::ranks, true, 0}},
      {"fractions-topk", {TagWeighting::fractions, true, 0}},
      {"fractions-fta", {TagWeighting::fractions, false, 0}},
      {"unweighted-topk", {TagWeighting::unweighted, true, 0}},
      {"unweighted-fta", {TagWeighting::unweighted, false, 0}},
      {"weighted-topk", {TagWeighting::weighted, true, 0}},
      {"weighted-fta", {TagWeighting::weighted, false, 0}},
  };
  auto it = known.find(name);
  if (it == known.end()) throw InvalidArgument("unknown representation '" + std::string(name) + "'");
  if (k < 1) throw InvalidArgument("k must be >= 1");
  auto scheme = it->second;
  scheme.k = k;
  return scheme;
}

std::string representation_name(const RepresentationScheme& scheme) {
  std::string base;
  switch (scheme.weighting) {
    case TagWeighting::ranks: base = "ranks"; break;
    case TagWeighting::fractions: base = "fractions"; break;
    case TagWeighting::unweighted: base = "unweighted"; break;
    case TagWeighting::weighted: base = "weighted"; break;
  }
  return base + (scheme.top_k ? "-topk" : "-fta");
}

std::vector<std::pair<std::string, std::size_t>> top_k_tags(
    const std::map<std::string, std::size_t, std::less<>>& weights, std::size_t k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  std::vector<std::pair<std::string, std::size_t>> ranked(weights.begin(), weights.end());
  // Map iteration is already lexicographic, so a stable sort on count keeps
  // the tie order.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

Vocabulary build_tag_vocabulary(const Folksonomy& f, std::span<const std::string> resources,
                                double min_df_fraction) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(resources.size());
  for (const auto& r : resources) {
    const auto& entry = f.resource(r);
    std::vector<std::string> tags;
    tags.reserve(entry.weights.size());
    for (const auto& [t, w] : entry.weights) tags.push_back(t);
    docs.push_back(std::move(tags));
  }
  return Vocabulary::build(docs, min_df_fraction);
}

FeatureVector represent_resource(const Folksonomy& f, std::string_view resource,
                                 const RepresentationScheme& scheme, const Vocabulary& vocab) {
  const auto& entry = f.resource(resource);
  if (scheme.weighting == TagWeighting::ranks && !scheme.top_k) {
    throw InvalidArgument("the ranks weighting is only defined for top-k selections");
  }
  if (entry.annotators == 0) return {};

  std::vector<std::pair<std::string, std::size_t>> selected;
  if (scheme.top_k) {
    selected = top_k_tags(entry.weights, scheme.k);
  } else {
    selected.assign(entry.weights.begin(), entry.weights.end());
  }

  const double p = static_cast<double>(entry.annotators);
  const double k = static_cast<double>(scheme.k);
  std::vector<FeatureEntry> out;
  out.reserve(selected.size());
  for (std::size_t rank = 0; rank < selected.size(); ++rank) {
    const auto& [tag, count] = selected[rank];
    auto id = vocab.find(tag);
    if (!id) continue;
    double w = 0.0;
    switch (scheme.weighting) {
      case TagWeighting::ranks: w = (k - static_cast<double>(rank)) / k; break;
      case TagWeighting::fractions: w = static_cast<double>(count) / p; break;
      case TagWeighting::unweighted: w = 1.0; break;
      case TagWeighting::weighted: w = static_cast<double>(count); break;
    }
    out.push_back({*id, w});
  }
  return FeatureVector::from_entries(std::move(out));
}

std::set<std::string, std::less<>> read_stopwords(std::istream& in) {
  std::set<std::string, std::less<>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    out.insert(line.substr(b, e - b + 1));
  }
  return out;
}

std::set<std::string, std::less<>> read_stopwords_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file '" + path + "'");
  return read_stopwords(in);
}

const std::set<std::string, std::less<>>& english_stopwords() {
  static const std::set<std::string, std::less<>> words{
      "a",     "about", "above", "after", "again", "against", "all",   "am",    "an",    "and",
      "any",   "are",   "as",    "at",    "be",    "because", "been",  "before", "being", "below",
      "between", "both", "but",  "by",    "can",   "could",   "did",   "do",    "does",  "doing",
      "down",  "during", "each", "few",   "for",   "from",    "further", "had", "has",   "have",
      "having", "he",   "her",   "here",  "hers",  "herself", "him",   "himself", "his", "how",
      "i",     "if",    "in",    "into",  "is",    "it",      "its",   "itself", "just", "me",
      "more",  "most",  "my",    "myself", "no",   "nor",     "not",   "now",   "of",    "off",
      "on",    "once",  "only",  "or",    "other", "our",     "ours",  "ourselves", "out", "over",
      "own",   "same",  "she",   "should", "so",   "some",    "such",  "than",  "that",  "the",
      "their", "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those",
      "through", "to",  "too",   "under", "until", "up",      "very",  "was",   "we",    "were",
      "what",  "when",  "where", "which", "while", "who",     "whom",  "why",   "will",  "with",
      "would", "you",   "your",  "yours", "yourself", "yourselves"};
  return words;
}

std::vector<std::string> text_tokens(std::string_view text, const TextPipelineConfig& cfg) {
  auto is_word_byte = [](unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
  };
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) continue;
    std::string token(text.substr(start, i - start));
    if (cfg.lowercase) {
      for (auto& c : token) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
    }
    if (cfg.stopwords.contains(token)) continue;
    if (cfg.stem) token = porter_stem(token);
    if (!token.empty()) out.push_back(std::move(token));
  }
  return out;
}

namespace {

std::map<FeatureId, double> count_known(std::string_view text, const Vocabulary& vocab,
                                        const TextPipelineConfig& cfg) {
  std::map<FeatureId, double> tf;
  for (const auto& t : text_tokens(text, cfg)) {
    if (auto id = vocab.find(t)) tf[*id] += 1.0;
  }
  return tf;
}

}  // namespace

FeatureVector represent_text(std::string_view text, const Vocabulary& vocab,
                             const TextPipelineConfig& cfg) {
  auto tf = count_known(text, vocab, cfg);
  const double docs = static_cast<double>(vocab.documents());
  for (auto& [id, w] : tf) {
    w *= std::log(docs / static_cast<double>(vocab.document_frequency(id)));
  }
  return FeatureVector(tf);
}

FeatureVector term_frequencies(std::string_view text, const Vocabulary& vocab,
                               const TextPipelineConfig& cfg) {
  return FeatureVector(count_known(text, vocab, cfg));
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_vector_line(std::string_view resource, const FeatureVector& v) {
  std::string line(resource);
  line.push_back('\t');
  bool first = true;
  for (const auto& e : v.entries()) {
    if (!first) line.push_back(' ');
    first = false;
    line += std::to_string(e.id);
    line.push_back(':');
    line += format_double(e.weight);
  }
  return line;
}

std::pair<std::string, FeatureVector> parse_vector_line(std::string_view line, std::size_t line_number) {
  auto tab = line.find('\t');
  if (tab == std::string_view::npos || tab == 0) {
    throw ParseError("expected resource<TAB>id:weight ...", line_number);
  }
  std::string resource(line.substr(0, tab));
  std::vector<FeatureEntry> entries;
  std::string_view rest = line.substr(tab + 1);
  while (!rest.empty()) {
    auto sp = rest.find(' ');
    auto item = rest.substr(0, sp);
    rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1);
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected id:weight", line_number);
    FeatureEntry e{};
    auto id_part = item.substr(0, colon);
    auto w_part = item.substr(colon + 1);
    auto r1 = std::from_chars(id_part.data(), id_part.data() + id_part.size(), e.id);
    auto r2 = std::from_chars(w_part.data(), w_part.data() + w_part.size(), e.weight);
    if (r1.ec != std::errc{} || r1.ptr != id_part.data() + id_part.size() || r2.ec != std::errc{} ||
        r2.ptr != w_part.data() + w_part.size()) {
      throw ParseError("malformed feature '" + std::string(item) + "'", line_number);
    }
    entries.push_back(e);
  }
  return {std::move(resource), FeatureVector::from_entries(std::move(entries))};
}

void write_vectors(std::ostream& out,
                   const std::vector<std::pair<std::string, FeatureVector>>& rows) {
  for (const auto& [r, v] : rows) out << format_vector_line(r, v) << '\n';
}

std::vector<std::pair<std::string, FeatureVector>> read_vectors(std::istream& in) {
  std::vector<std::pair<std::string, FeatureVector>> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_vector_line(line, n));
  }
  return out;
}

}  // namespace folkscope
