#include "folkscope/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "folkscope/error.hpp"
#include "json.hpp"
#include "random.hpp"

namespace folkscope {

using json = nlohmann::ordered_json;

ResourceTexts read_texts(std::istream& in) {
  ResourceTexts out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("expected resource<TAB>text", n);
    auto [it, fresh] = out.emplace(line.substr(0, tab), line.substr(tab + 1));
    // Repeated resources accumulate, matching merged descriptive texts.
    if (!fresh) it->second += " " + line.substr(tab + 1);
  }
  return out;
}

ResourceTexts read_texts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open text file '" + path + "'");
  return read_texts(in);
}

FeatureSource parse_feature_source(std::string_view name, std::size_t k) {
  FeatureSource s;
  if (name == "text") {
    s.kind = FeatureSource::Kind::text;
    s.text.stopwords = english_stopwords();
    return s;
  }
  if (name == "tf" || name == "tf-irf" || name == "tf-iuf" || name == "tf-ibf") {
    s.kind = FeatureSource::Kind::weighting;
    s.weighting = name == "tf" ? InverseFrequencyKind::none : parse_inverse_frequency(name.substr(3));
    return s;
  }
  s.kind = FeatureSource::Kind::representation;
  s.scheme = parse_representation(name, k);
  return s;
}

std::string feature_source_name(const FeatureSource& s) {
  switch (s.kind) {
    case FeatureSource::Kind::representation: return representation_name(s.scheme);
    case FeatureSource::Kind::weighting:
      return s.weighting == InverseFrequencyKind::none ? "tf" : "tf-" + inverse_frequency_name(s.weighting);
    case FeatureSource::Kind::text: return "text";
  }
  return "text";
}

bool in_test_partition(std::string_view resource, std::uint64_t seed, double test_fraction) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : resource) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  const std::uint64_t mixed = detail::splitmix64(h ^ detail::splitmix64(seed));
  const double u = static_cast<double>(mixed >> 11) * 0x1.0p-53;
  return u < test_fraction;
}

void ExperimentSpec::validate() const {
  train.validate();
  if (runs < 1) throw InvalidArgument("runs must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw InvalidArgument("test_fraction must lie in (0, 1)");
  if (sizes.empty()) throw InvalidArgument("at least one training-set size is required");
  for (auto s : sizes) {
    if (s < 1) throw InvalidArgument("training-set sizes must be >= 1");
  }
  if (min_category_resources < 1) throw InvalidArgument("min_category_resources must be >= 1");
  if (min_users < 1) throw InvalidArgument("min_users must be >= 1");
}

namespace {

struct LabeledResource {
  std::string resource;
  std::string label;
};

struct PreparedLabels {
  std::vector<LabeledResource> items;  // sorted by resource id
  std::map<std::string, std::size_t> pruned;
};

// Keeps resources that are annotated and popular enough, then prunes small
// categories at the requested level.
PreparedLabels prepare_labels(const Folksonomy& f, const std::vector<CategoryAssignment>& labels,
                              CategoryLevel level, std::size_t min_category_resources, std::size_t min_users) {
  std::vector<CategoryAssignment> present;
  for (const auto& a : labels) {
    const auto* entry = f.find_resource(a.resource);
    if (entry && entry->annotators > 0 && entry->annotators >= min_users) present.push_back(a);
  }
  auto pruned = prune_small_categories(present, level, min_category_resources);
  PreparedLabels out;
  out.pruned = std::move(pruned.removed);
  for (const auto& a : pruned.kept) out.items.push_back({a.resource, *category_label(a, level)});
  std::sort(out.items.begin(), out.items.end(),
            [](const auto& a, const auto& b) { return a.resource < b.resource; });
  return out;
}

std::string_view text_of(const ResourceTexts* texts, std::string_view resource) {
  if (!texts) return {};
  auto it = texts->find(resource);
  return it == texts->end() ? std::string_view{} : std::string_view(it->second);
}

Vocabulary source_vocabulary(const FeatureSource& source, const Folksonomy& f,
                             std::span<const std::string> resources, const ResourceTexts* texts,
                             double min_df_fraction) {
  if (source.kind != FeatureSource::Kind::text) return build_tag_vocabulary(f, resources, min_df_fraction);
  if (!texts) throw InvalidArgument("the text source needs resource texts");
  std::vector<std::vector<std::string>> docs;
  docs.reserve(resources.size());
  for (const auto& r : resources) docs.push_back(text_tokens(text_of(texts, r), source.text));
  return Vocabulary::build(docs, min_df_fraction);
}

FeatureVector featurize(const FeatureSource& source, const Folksonomy& f, std::string_view resource,
                        const Vocabulary& vocab, const ResourceTexts* texts) {
  switch (source.kind) {
    case FeatureSource::Kind::representation: return represent_resource(f, resource, source.scheme, vocab);
    case FeatureSource::Kind::weighting: return weight_resource(f, resource, source.weighting, vocab);
    case FeatureSource::Kind::text: return represent_text(text_of(texts, resource), vocab, source.text);
  }
  return {};
}

// Instances with categories collected from their own labels, sorted.
LabeledDataset make_dataset(std::span<const std::size_t> idx, const std::vector<LabeledResource>& items,
                            const std::vector<FeatureVector>& vectors, std::size_t dimension) {
  LabeledDataset data;
  data.dimension = dimension;
  std::set<std::string> cats;
  for (auto i : idx) cats.insert(items[i].label);
  data.categories.assign(cats.begin(), cats.end());
  for (auto i : idx) {
    auto pos = std::lower_bound(data.categories.begin(), data.categories.end(), items[i].label);
    data.add(vectors[i], static_cast<std::size_t>(pos - data.categories.begin()));
  }
  return data;
}

MarginTable margins_for(const Classifier& model, std::span<const std::size_t> idx,
                        const std::vector<LabeledResource>& items, const std::vector<FeatureVector>& vectors) {
  MarginTable t;
  t.categories = model.categories();
  for (auto i : idx) {
    t.instances.push_back(items[i].resource);
    t.scores.push_back(model.margins(vectors[i]));
  }
  return t;
}

double accuracy_of(std::span<const std::size_t> predictions, const std::vector<std::string>& categories,
                   std::span<const std::size_t> idx, const std::vector<LabeledResource>& items) {
  std::size_t correct = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (categories[predictions[j]] == items[idx[j]].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(idx.size());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec, const Folksonomy& f,
                                const std::vector<CategoryAssignment>& labels, const ResourceTexts* texts) {
  spec.validate();
  ExperimentReport report;
  report.spec = spec;

  auto prepared = prepare_labels(f, labels, spec.level, spec.min_category_resources, spec.min_users);
  report.pruned_categories = prepared.pruned;
  report.labeled_resources = prepared.items.size();
  const auto& items = prepared.items;

  std::vector<std::size_t> pool, test;
  for (std::size_t i = 0; i < items.size(); ++i) {
    (in_test_partition(items[i].resource, spec.base_seed, spec.test_fraction) ? test : pool).push_back(i);
  }
  report.pool_size = pool.size();
  report.test_size = test.size();
  if (test.empty()) throw InvalidArgument("the test partition is empty; raise test_fraction or add data");
  for (auto s : spec.sizes) {
    if (s > pool.size()) {
      throw InvalidArgument("training-set size " + std::to_string(s) + " exceeds the " +
                            std::to_string(pool.size()) + " labeled resources available for training");
    }
  }
  {
    std::set<std::string> cats;
    for (const auto& it : items) cats.insert(it.label);
    report.categories.assign(cats.begin(), cats.end());
  }

  // Vocabularies come from the training pool so test resources never shape them.
  std::vector<FeatureSource> sources{spec.source};
  sources.insert(sources.end(), spec.committee.begin(), spec.committee.end());
  std::vector<std::string> pool_ids;
  for (auto i : pool) pool_ids.push_back(items[i].resource);
  std::vector<Vocabulary> vocabs;
  std::vector<std::vector<FeatureVector>> vectors(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    vocabs.push_back(source_vocabulary(sources[s], f, pool_ids, texts, spec.min_df_fraction));
    vectors[s].reserve(items.size());
    for (const auto& it : items) vectors[s].push_back(featurize(sources[s], f, it.resource, vocabs[s], texts));
  }

  const bool self_training = spec.train.mode == LearningMode::self_training;
  for (auto size : spec.sizes) {
    SizeResult sr;
    sr.size = size;
    double sum = 0.0, committee_sum = 0.0;
    for (std::size_t run = 0; run < spec.runs; ++run) {
      RunResult rr;
      rr.size = size;
      rr.run = run;
      rr.seed = spec.base_seed + run;
      std::vector<std::size_t> order = pool;
      detail::Rng rng(rr.seed);
      rng.shuffle(order);
      std::span<const std::size_t> labeled(order.data(), size);
      std::span<const std::size_t> unlabeled(order.data() + size, order.size() - size);

      std::vector<MarginTable> member_margins;
      for (std::size_t s = 0; s < sources.size(); ++s) {
        auto data = make_dataset(labeled, items, vectors[s], vocabs[s].size());
        if (data.category_count() < 2) {
          throw InvalidArgument("training-set size " + std::to_string(size) + " run " + std::to_string(run) +
                                " covers a single category");
        }
        Classifier model;
        if (self_training) {
          std::vector<FeatureVector> extra;
          for (auto i : unlabeled) extra.push_back(vectors[s][i]);
          auto st = self_train_2step(data, extra, spec.train);
          model = std::move(st.model);
          if (s == 0) rr.pseudo_label_counts = st.pseudo_label_counts;
        } else {
          model = train(data, spec.train);
        }
        std::vector<std::size_t> pred;
        for (auto i : test) pred.push_back(model.predict(vectors[s][i]));
        const double acc = accuracy_of(pred, model.categories(), test, items);
        if (s == 0) rr.accuracy = acc;
        if (sources.size() > 1) {
          rr.member_accuracies.push_back(acc);
          member_margins.push_back(margins_for(model, test, items, vectors[s]));
        }
      }
      if (sources.size() > 1) {
        auto sums = combine(member_margins, true);
        auto pred = predict_committee(sums);
        rr.committee_accuracy = accuracy_of(pred, sums.categories, test, items);
        committee_sum += *rr.committee_accuracy;
      }
      sum += rr.accuracy;
      sr.runs.push_back(std::move(rr));
    }
    sr.mean_accuracy = sum / static_cast<double>(spec.runs);
    if (sources.size() > 1) sr.mean_committee_accuracy = committee_sum / static_cast<double>(spec.runs);
    report.results.push_back(std::move(sr));
  }
  return report;
}

TopKSweepReport run_topk_sweep(const ExperimentSpec& spec, std::span<const std::size_t> ks,
                               const Folksonomy& f, const std::vector<CategoryAssignment>& labels) {
  if (ks.empty()) throw InvalidArgument("the sweep needs at least one k");
  for (auto k : ks) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
  }
  TopKSweepReport out;
  out.ks.assign(ks.begin(), ks.end());
  ExperimentSpec s = spec;
  s.committee.clear();
  s.source.kind = FeatureSource::Kind::representation;
  s.source.scheme = {TagWeighting::weighted, false, 10};
  out.fta = run_experiment(s, f, labels);
  double previous = -1.0;
  for (auto k : ks) {
    s.source.scheme = {TagWeighting::weighted, true, k};
    out.topk.push_back(run_experiment(s, f, labels));
    const double acc = out.topk.back().results.back().mean_accuracy;
    if (acc < previous) out.non_decreasing = false;
    previous = acc;
  }
  return out;
}

ModelBundle train_bundle(const BundleSpec& spec, const Folksonomy& f,
                         const std::vector<CategoryAssignment>& labels, const ResourceTexts* texts) {
  spec.train.validate();
  if (!(spec.test_fraction >= 0.0 && spec.test_fraction < 1.0)) {
    throw InvalidArgument("test_fraction must lie in [0, 1)");
  }
  auto prepared = prepare_labels(f, labels, spec.level, spec.min_category_resources, 1);
  std::vector<std::size_t> pool;
  std::vector<std::string> pool_ids;
  std::set<std::string, std::less<>> labeled_ids;
  for (std::size_t i = 0; i < prepared.items.size(); ++i) {
    labeled_ids.insert(prepared.items[i].resource);
    if (in_test_partition(prepared.items[i].resource, spec.train.seed, spec.test_fraction)) continue;
    pool.push_back(i);
    pool_ids.push_back(prepared.items[i].resource);
  }
  if (pool.empty()) throw InvalidArgument("no labeled resources left for training");

  std::vector<std::string> unlabeled_ids;
  const bool self_training = spec.train.mode == LearningMode::self_training;
  if (self_training) {
    for (const auto& [id, entry] : f.resources()) {
      if (entry.annotators == 0 || labeled_ids.contains(id)) continue;
      if (in_test_partition(id, spec.train.seed, spec.test_fraction)) continue;
      unlabeled_ids.push_back(id);
    }
  }
  std::vector<std::string> vocab_ids = pool_ids;
  vocab_ids.insert(vocab_ids.end(), unlabeled_ids.begin(), unlabeled_ids.end());

  ModelBundle bundle;
  bundle.source = spec.source;
  bundle.level = spec.level;
  bundle.test_fraction = spec.test_fraction;
  bundle.partition_seed = spec.train.seed;
  bundle.vocabulary = source_vocabulary(spec.source, f, vocab_ids, texts, spec.min_df_fraction);

  std::vector<FeatureVector> vectors(prepared.items.size());
  for (auto i : pool) vectors[i] = featurize(spec.source, f, prepared.items[i].resource, bundle.vocabulary, texts);
  auto data = make_dataset(pool, prepared.items, vectors, bundle.vocabulary.size());
  if (self_training) {
    std::vector<FeatureVector> extra;
    for (const auto& id : unlabeled_ids) extra.push_back(featurize(spec.source, f, id, bundle.vocabulary, texts));
    auto st = self_train_2step(data, extra, spec.train);
    bundle.classifier = std::move(st.model);
    bundle.pseudo_label_counts = std::move(st.pseudo_label_counts);
  } else {
    bundle.classifier = train(data, spec.train);
  }
  return bundle;
}

BundleEvaluation evaluate_bundle(const ModelBundle& bundle, const Folksonomy& f,
                                 const std::vector<CategoryAssignment>& labels, bool all,
                                 const ResourceTexts* texts) {
  auto prepared = prepare_labels(f, labels, bundle.level, 1, 1);
  BundleEvaluation out;
  out.margins.categories = bundle.classifier.categories();
  std::size_t correct = 0;
  for (const auto& it : prepared.items) {
    if (!all && !in_test_partition(it.resource, bundle.partition_seed, bundle.test_fraction)) continue;
    auto x = featurize(bundle.source, f, it.resource, bundle.vocabulary, texts);
    auto m = bundle.classifier.margins(x);
    auto pred = bundle.classifier.categories()[bundle.classifier.predict(x)];
    if (pred == it.label) ++correct;
    out.margins.instances.push_back(it.resource);
    out.margins.scores.push_back(std::move(m));
    out.predictions.push_back(std::move(pred));
    out.truth.push_back(it.label);
  }
  out.instances = out.predictions.size();
  if (out.instances == 0) throw InvalidArgument("no labeled resources to evaluate");
  out.accuracy = static_cast<double>(correct) / static_cast<double>(out.instances);
  return out;
}

namespace {

constexpr const char* kBundleFormat = "folkscope-bundle/1";

json source_json(const FeatureSource& s) {
  json j = {{"name", feature_source_name(s)}};
  if (s.kind == FeatureSource::Kind::representation) j["k"] = s.scheme.k;
  if (s.kind == FeatureSource::Kind::text) {
    j["lowercase"] = s.text.lowercase;
    j["stem"] = s.text.stem;
    j["stopwords"] = std::vector<std::string>(s.text.stopwords.begin(), s.text.stopwords.end());
  }
  return j;
}

FeatureSource source_from_json(const json& j) {
  auto s = parse_feature_source(j.at("name").get<std::string>(), j.value("k", std::size_t{10}));
  if (s.kind == FeatureSource::Kind::text) {
    s.text.lowercase = j.at("lowercase").get<bool>();
    s.text.stem = j.at("stem").get<bool>();
    auto words = j.at("stopwords").get<std::vector<std::string>>();
    s.text.stopwords = {words.begin(), words.end()};
  }
  return s;
}

json train_json(const TrainConfig& c) {
  return {{"scheme", scheme_name(c.scheme)},
          {"penalty", c.penalty},
          {"epochs", c.epochs},
          {"seed", c.seed},
          {"self_train", c.mode == LearningMode::self_training},
          {"squared_hinge", c.squared_hinge}};
}

const char* level_name(CategoryLevel l) { return l == CategoryLevel::top ? "top" : "second"; }

json meta(std::string_view report, json config) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"report", report}, {"config", std::move(config)}};
}

json buckets_json(const RelationBuckets& b) {
  return {{"greater", b.greater}, {"equal", b.equal}, {"less", b.less}};
}

json ingest_json(const IngestReport& r) {
  return {{"records", r.records},
          {"bookmarks", {{"total", r.bookmarks}, {"annotated", r.annotated_bookmarks}}},
          {"users", {{"total", r.users}, {"annotated", r.annotated_users}}},
          {"resources", {{"total", r.resources}, {"annotated", r.annotated_resources}}},
          {"duplicate_bookmarks", r.duplicate_bookmarks},
          {"duplicate_tags", r.duplicate_tags},
          {"synthetic_order_resources", r.synthetic_order_resources}};
}

json experiment_spec_json(const ExperimentSpec& s) {
  json members = json::array();
  for (const auto& m : s.committee) members.push_back(source_json(m));
  return {{"source", source_json(s.source)},
          {"committee", members},
          {"train", train_json(s.train)},
          {"sizes", s.sizes},
          {"runs", s.runs},
          {"base_seed", s.base_seed},
          {"level", level_name(s.level)},
          {"test_fraction", s.test_fraction},
          {"test_partition", "fnv1a-splitmix hash of resource id and base_seed"},
          {"min_category_resources", s.min_category_resources},
          {"min_users", s.min_users},
          {"min_df_fraction", s.min_df_fraction}};
}

json experiment_results_json(const ExperimentReport& r) {
  json sizes = json::array();
  for (const auto& s : r.results) {
    json runs = json::array();
    for (const auto& run : s.runs) {
      json jr = {{"run", run.run}, {"seed", run.seed}, {"accuracy", run.accuracy}};
      if (!run.member_accuracies.empty()) jr["member_accuracies"] = run.member_accuracies;
      if (run.committee_accuracy) jr["committee_accuracy"] = *run.committee_accuracy;
      if (!run.pseudo_label_counts.empty()) jr["pseudo_label_counts"] = run.pseudo_label_counts;
      runs.push_back(std::move(jr));
    }
    json js = {{"size", s.size}, {"mean_accuracy", s.mean_accuracy}, {"runs", runs}};
    if (s.mean_committee_accuracy) js["mean_committee_accuracy"] = *s.mean_committee_accuracy;
    sizes.push_back(std::move(js));
  }
  return sizes;
}

json experiment_data_json(const ExperimentReport& r) {
  return {{"labeled_resources", r.labeled_resources},
          {"pool_size", r.pool_size},
          {"test_size", r.test_size},
          {"categories", r.categories},
          {"pruned_categories", r.pruned_categories},
          {"warnings", r.warnings}};
}

json descriptiveness_json(const DescriptivenessResult& d) {
  return {{"value", d.value}, {"resources", d.resources}, {"zero_vector_resources", d.zero_vector_resources}};
}

}  // namespace

std::string serialize_bundle(const ModelBundle& b) {
  json doc = {
      {"format", kBundleFormat},
      {"source", source_json(b.source)},
      {"level", level_name(b.level)},
      {"test_fraction", b.test_fraction},
      {"partition_seed", b.partition_seed},
      {"pseudo_label_counts", b.pseudo_label_counts},
      {"vocabulary",
       {{"documents", b.vocabulary.documents()},
        {"tokens", b.vocabulary.tokens()},
        {"document_frequency", b.vocabulary.document_frequencies()}}},
      {"classifier", json::parse(serialize_classifier(b.classifier))},
  };
  return doc.dump();
}

ModelBundle deserialize_bundle(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model bundle: ") + e.what(), 0);
  }
  if (doc.value("format", "") != kBundleFormat) {
    throw ParseError("unsupported model bundle format '" + doc.value("format", "") + "'", 0);
  }
  try {
    ModelBundle b;
    b.source = source_from_json(doc.at("source"));
    b.level = doc.at("level").get<std::string>() == "second" ? CategoryLevel::second : CategoryLevel::top;
    b.test_fraction = doc.at("test_fraction").get<double>();
    b.partition_seed = doc.at("partition_seed").get<std::uint64_t>();
    b.pseudo_label_counts = doc.at("pseudo_label_counts").get<std::vector<std::size_t>>();
    const auto& v = doc.at("vocabulary");
    b.vocabulary = Vocabulary(v.at("tokens").get<std::vector<std::string>>(),
                              v.at("document_frequency").get<std::vector<std::size_t>>(),
                              v.at("documents").get<std::size_t>());
    b.classifier = deserialize_classifier(doc.at("classifier").dump());
    return b;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model bundle: ") + e.what(), 0);
  }
}

DescriptivenessResult tag_descriptiveness(const Folksonomy& f, const ResourceTexts& texts,
                                          const std::set<std::string>* users,
                                          const TextPipelineConfig& pipeline) {
  // Shared term space: tag strings and text tokens meet when equal.
  std::map<std::string, std::map<std::string, double>> tag_counts;
  for (const auto& b : f.bookmarks()) {
    if (!b.annotated() || (users && !users->contains(b.user))) continue;
    if (!texts.contains(b.resource)) continue;
    auto& counts = tag_counts[b.resource];
    for (const auto& t : b.tags) counts[t] += 1.0;
  }
  std::map<std::string, std::vector<std::string>> tokens;
  std::set<std::string> terms;
  for (const auto& [r, counts] : tag_counts) {
    auto tk = text_tokens(texts.find(r)->second, pipeline);
    terms.insert(tk.begin(), tk.end());
    for (const auto& [t, c] : counts) terms.insert(t);
    tokens.emplace(r, std::move(tk));
  }
  std::map<std::string, FeatureId> ids;
  for (const auto& t : terms) ids.emplace(t, static_cast<FeatureId>(ids.size()));

  std::map<std::string, FeatureVector> tag_vectors, reference_vectors;
  for (const auto& [r, counts] : tag_counts) {
    std::map<FeatureId, double> tv, rv;
    for (const auto& [t, c] : counts) tv[ids.at(t)] = c;
    for (const auto& t : tokens.at(r)) rv[ids.at(t)] += 1.0;
    tag_vectors.emplace(r, FeatureVector(tv));
    reference_vectors.emplace(r, FeatureVector(rv));
  }
  if (tag_vectors.empty()) throw InvalidArgument("no resource has both tags from the selected users and text");
  return descriptiveness(tag_vectors, reference_vectors);
}

std::string ingest_report_json(const IngestReport& report, std::string_view source) {
  json doc = {{"meta", meta("ingest", {{"input", source}})},
              {"data", {{"input", source}}},
              {"results", ingest_json(report)}};
  return doc.dump(2);
}

std::string evaluation_report_json(const ModelBundle& bundle, const BundleEvaluation& ev, bool all) {
  const auto& m = bundle.classifier.metadata();
  json config = {{"source", source_json(bundle.source)},
                 {"scheme", m.scheme},
                 {"learning_mode", m.learning_mode},
                 {"penalty", m.penalty},
                 {"epochs", m.epochs},
                 {"seed", m.seed},
                 {"squared_hinge", m.squared_hinge},
                 {"level", level_name(bundle.level)},
                 {"partition_seed", bundle.partition_seed},
                 {"test_fraction", bundle.test_fraction},
                 {"scope", all ? "all" : "test"}};
  json rows = json::array();
  for (std::size_t j = 0; j < ev.instances; ++j) {
    rows.push_back({{"instance", ev.margins.instances[j]}, {"prediction", ev.predictions[j]}, {"truth", ev.truth[j]}});
  }
  json doc = {{"meta", meta("evaluation", config)},
              {"data", {{"instances", ev.instances}, {"categories", bundle.classifier.categories()}}},
              {"results", {{"accuracy", ev.accuracy}, {"predictions", rows}}}};
  return doc.dump(2);
}

std::string statistics_report_json(const Folksonomy& f, const StatsOptions& opts) {
  auto s = corpus_statistics(f);
  json results = {
      {"tags", s.tags},
      {"tags_per_resource", s.tags_per_resource},
      {"tags_per_user", s.tags_per_user},
      {"tags_per_bookmark", s.tags_per_bookmark},
      {"tag_usage",
       {{"resources", s.usage_resources}, {"users", s.usage_users}, {"bookmarks", s.usage_bookmarks}}},
      {"within_resource_popularity", s.within_resource_popularity},
      {"frequency_relations",
       {{"bookmarks_vs_users", buckets_json(s.bookmarks_vs_users)},
        {"resources_vs_users", buckets_json(s.resources_vs_users)},
        {"bookmarks_vs_resources", buckets_json(s.bookmarks_vs_resources)}}},
  };
  if (opts.include_novelty) {
    results["novelty_by_rank"] = mean_novelty_by_rank(f, opts.novelty_max_rank, opts.allow_synthetic_order);
    results["mean_novelty"] = mean_novelty(f, opts.allow_synthetic_order);
  }
  if (!opts.novelty_resource.empty()) {
    json points = json::array();
    for (const auto& p : novelty_ratios(f, opts.novelty_resource, opts.allow_synthetic_order)) {
      points.push_back({{"rank", p.rank}, {"ratio", p.ratio}});
    }
    results["resource_novelty"] = {{"resource", opts.novelty_resource}, {"points", points}};
  }
  if (opts.popular_min_users > 0) {
    auto popular = filter_popular(f, opts.popular_min_users);
    results["popular_resources"] = {{"min_users", opts.popular_min_users},
                                    {"count", popular.size()},
                                    {"resources", std::vector<std::string>(popular.begin(), popular.end())}};
  }
  json config = {{"novelty_max_rank", opts.novelty_max_rank},
                 {"allow_synthetic_order", opts.allow_synthetic_order},
                 {"include_novelty", opts.include_novelty},
                 {"popular_min_users", opts.popular_min_users},
                 {"novelty_resource", opts.novelty_resource},
                 {"novelty_first_rank_convention", 1.0}};
  json doc = {{"meta", meta("statistics", config)}, {"data", ingest_json(s.ingest)}, {"results", results}};
  return doc.dump(2);
}

std::string correlation_report_json(const Folksonomy& f) {
  json pairs = json::object();
  for (const auto& p : correlate_weightings(f)) {
    pairs[inverse_frequency_name(p.first) + "_" + inverse_frequency_name(p.second)] = {{"r", p.r},
                                                                                      {"rho", p.rho}};
  }
  json doc = {{"meta", meta("correlation", {{"log", "natural"}, {"tag_filter", "none"}, {"ties", "average"}})},
              {"data", {{"tags", f.tag_frequencies().size()},
                        {"resources", f.resource_count()},
                        {"users", f.user_count()},
                        {"bookmarks", f.bookmark_count()}}},
              {"results", {{"correlation", pairs}}}};
  return doc.dump(2);
}

std::string experiment_report_json(const ExperimentReport& r) {
  json doc = {{"meta", meta("experiment", experiment_spec_json(r.spec))},
              {"data", experiment_data_json(r)},
              {"results", {{"sizes", experiment_results_json(r)}}}};
  return doc.dump(2);
}

std::string topk_report_json(const TopKSweepReport& r) {
  json table = json::array();
  for (std::size_t i = 0; i < r.ks.size(); ++i) {
    table.push_back({{"k", r.ks[i]}, {"sizes", experiment_results_json(r.topk[i])}});
  }
  json doc = {{"meta", meta("topk-sweep", experiment_spec_json(r.fta.spec))},
              {"data", experiment_data_json(r.fta)},
              {"results",
               {{"topk", table},
                {"fta", experiment_results_json(r.fta)},
                {"non_decreasing", r.non_decreasing}}}};
  return doc.dump(2);
}

std::string committee_report_json(const CommitteeOutcome& o) {
  json norm = json::array();
  for (const auto& n : o.normalization) norm.push_back({{"divisor", n.divisor}, {"degenerate", n.degenerate}});
  json rows = json::array();
  for (std::size_t j = 0; j < o.sums.instances.size(); ++j) {
    rows.push_back({{"instance", o.sums.instances[j]},
                    {"scores", o.sums.scores[j]},
                    {"prediction", o.sums.categories[o.predictions[j]]},
                    {"prediction_index", o.predictions[j]}});
  }
  json results = {{"categories", o.sums.categories}, {"instances", rows}};
  if (o.accuracy) results["accuracy"] = *o.accuracy;
  json doc = {{"meta", meta("committee", {{"normalize", o.normalized},
                                          {"normalization_scope", "global maximum over the combined batch"},
                                          {"sources", o.sources}})},
              {"data", {{"classifiers", o.sources.size()}, {"normalization", norm}}},
              {"results", results}};
  return doc.dump(2);
}

std::string behavior_report_json(const BehaviorOutcome& o) {
  json splits = json::array();
  for (std::size_t i = 0; i < o.splits.size(); ++i) {
    const auto& s = o.splits[i];
    json js = {{"percent", s.percent},
               {"categorizers", s.categorizers},
               {"describers", s.describers},
               {"categorizer_fraction", s.categorizer_fraction},
               {"describer_fraction", s.describer_fraction},
               {"overlap", s.overlap}};
    if (i < o.descriptiveness.size()) {
      js["descriptiveness"] = {{"categorizers", descriptiveness_json(o.descriptiveness[i].first)},
                               {"describers", descriptiveness_json(o.descriptiveness[i].second)}};
    }
    splits.push_back(std::move(js));
  }
  json ranking = json::array();
  for (const auto& p : o.ranked) ranking.push_back(p.user);
  json doc = {{"meta", meta("behavior", {{"measure", measure_name(o.measure)},
                                         {"ranking_direction", "ascending: low values are the Categorizer end"}})},
              {"data", {{"users", o.ranked.size()}}},
              {"results", {{"ranking", ranking}, {"splits", splits}}}};
  return doc.dump(2);
}

std::string format_profiles(std::span<const UserProfile> profiles) {
  std::ostringstream out;
  for (const auto& p : profiles) {
    out << p.user << '\t' << format_double(p.tpp) << '\t' << format_double(p.trr) << '\t'
        << format_double(p.orphan) << '\t' << p.assignments << '\n';
  }
  return out.str();
}

}  // namespace folkscope
