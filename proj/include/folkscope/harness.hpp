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
#include <vector>

#include "folkscope/behavior.hpp"
#include "folkscope/classify.hpp"
#include "folkscope/committees.hpp"
#include "folkscope/folksonomy.hpp"
#include "folkscope/representation.hpp"
#include "folkscope/weighting.hpp"

namespace folkscope {

inline constexpr std::string_view kToolName = "folkscope";
inline constexpr std::string_view kToolVersion = "1.0.0";

// resource -> descriptive text
using ResourceTexts = std::map<std::string, std::string, std::less<>>;

// `resource<TAB>text` lines.
ResourceTexts read_texts(std::istream& in);
ResourceTexts read_texts_file(const std::string& path);

// What a classifier sees: a tag representation, a TF-IxF weighting or
// the bag of words of the resource's text.
struct FeatureSource {
  enum class Kind { representation, weighting, text };
  Kind kind = Kind::representation;
  RepresentationScheme scheme;
  InverseFrequencyKind weighting = InverseFrequencyKind::none;
  TextPipelineConfig text;

  bool operator==(const FeatureSource&) const = default;
};

// Representation names (weighted-fta, ranks-topk, ...), tf-irf | tf-iuf |
// tf-ibf | tf, or text. Text sources use the English stopword list with
// stemming on.
FeatureSource parse_feature_source(std::string_view name, std::size_t k = 10);
std::string feature_source_name(const FeatureSource& s);

// Deterministic test-partition membership from a hash of the resource id
// and the partition seed.
bool in_test_partition(std::string_view resource, std::uint64_t seed, double test_fraction);

struct ExperimentSpec {
  FeatureSource source;
  std::vector<FeatureSource> committee;  // optional extra members
  TrainConfig train;
  std::vector<std::size_t> sizes;
  std::size_t runs = 6;
  std::uint64_t base_seed = 1;
  CategoryLevel level = CategoryLevel::top;
  double test_fraction = 0.4;
  std::size_t min_category_resources = 5;
  std::size_t min_users = 1;
  double min_df_fraction = 0.0;

  void validate() const;
};

struct RunResult {
  std::size_t size = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double accuracy = 0;
  // member accuracies then the committee accuracy, when a committee is set
  std::vector<double> member_accuracies;
  std::optional<double> committee_accuracy;
  std::vector<std::size_t> pseudo_label_counts;
};

struct SizeResult {
  std::size_t size = 0;
  std::vector<RunResult> runs;
  double mean_accuracy = 0;
  std::optional<double> mean_committee_accuracy;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::size_t labeled_resources = 0;  // after pruning and popularity filter
  std::size_t pool_size = 0;          // candidates for training subsets
  std::size_t test_size = 0;
  std::vector<std::string> categories;
  std::map<std::string, std::size_t> pruned_categories;
  std::vector<SizeResult> results;
  std::vector<std::string> warnings;
};

ExperimentReport run_experiment(const ExperimentSpec& spec, const Folksonomy& f,
                                const std::vector<CategoryAssignment>& labels,
                                const ResourceTexts* texts = nullptr);

struct TopKSweepReport {
  std::vector<std::size_t> ks;
  std::vector<ExperimentReport> topk;  // one per k, weighted-topk
  ExperimentReport fta;                // weighted-fta baseline
  // mean accuracy at the largest size never drops as k grows (ties allowed)
  bool non_decreasing = true;
};

// k = 0 is rejected.
TopKSweepReport run_topk_sweep(const ExperimentSpec& spec, std::span<const std::size_t> ks,
                               const Folksonomy& f, const std::vector<CategoryAssignment>& labels);

// A trained classifier plus everything needed to featurize new resources.
struct ModelBundle {
  FeatureSource source;
  Vocabulary vocabulary;
  Classifier classifier;
  CategoryLevel level = CategoryLevel::top;
  double test_fraction = 0.4;
  std::uint64_t partition_seed = 1;
  std::vector<std::size_t> pseudo_label_counts;
};

struct BundleSpec {
  FeatureSource source;
  TrainConfig train;
  CategoryLevel level = CategoryLevel::top;
  double test_fraction = 0.4;
  std::size_t min_category_resources = 1;
  double min_df_fraction = 0.0;
};

// Trains on every labeled resource outside the test partition. With
// self-training, annotated resources that carry no label (and are not in
// the test partition) form the unlabeled set.
ModelBundle train_bundle(const BundleSpec& spec, const Folksonomy& f,
                         const std::vector<CategoryAssignment>& labels, const ResourceTexts* texts = nullptr);

struct BundleEvaluation {
  double accuracy = 0;
  std::size_t instances = 0;
  MarginTable margins;
  std::vector<std::string> predictions;
  std::vector<std::string> truth;
};

// Scores the test partition, or every labeled resource when all = true.
BundleEvaluation evaluate_bundle(const ModelBundle& bundle, const Folksonomy& f,
                                 const std::vector<CategoryAssignment>& labels, bool all,
                                 const ResourceTexts* texts = nullptr);

// `all` records the scope in the report.
std::string evaluation_report_json(const ModelBundle& bundle, const BundleEvaluation& ev, bool all);

std::string serialize_bundle(const ModelBundle& bundle);
ModelBundle deserialize_bundle(std::string_view document);

// Mean cosine between the tags a set of users put on each resource (TF over
// their assignments) and the term frequencies of the resource's text.
// Resources without text or untouched by the users are skipped. `users`
// null means everybody.
DescriptivenessResult tag_descriptiveness(const Folksonomy& f, const ResourceTexts& texts,
                                          const std::set<std::string>* users,
                                          const TextPipelineConfig& pipeline);

// ---- report documents (JSON with meta / data / results sections) ----

std::string ingest_report_json(const IngestReport& report, std::string_view source);

struct StatsOptions {
  std::size_t novelty_max_rank = 100;
  bool allow_synthetic_order = false;
  bool include_novelty = true;
  std::size_t popular_min_users = 0;  // 0: skip the popularity section
  std::string novelty_resource;       // non-empty: per-bookmark ratios for it
};
std::string statistics_report_json(const Folksonomy& f, const StatsOptions& opts);

std::string correlation_report_json(const Folksonomy& f);
std::string experiment_report_json(const ExperimentReport& report);
std::string topk_report_json(const TopKSweepReport& report);

struct CommitteeOutcome {
  std::vector<std::string> sources;
  bool normalized = false;
  std::vector<NormalizationReport> normalization;
  MarginTable sums;
  std::vector<std::size_t> predictions;
  std::optional<double> accuracy;  // when truth labels were supplied
};
std::string committee_report_json(const CommitteeOutcome& outcome);

struct BehaviorOutcome {
  BehaviorMeasure measure = BehaviorMeasure::tpp;
  std::vector<UserProfile> ranked;
  std::vector<UserSplit> splits;
  // per split: Categorizer then Describer descriptiveness, when texts given
  std::vector<std::pair<DescriptivenessResult, DescriptivenessResult>> descriptiveness;
};
std::string behavior_report_json(const BehaviorOutcome& outcome);
std::string format_profiles(std::span<const UserProfile> profiles);

}  // namespace folkscope
