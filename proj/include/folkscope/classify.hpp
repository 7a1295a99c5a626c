#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "folkscope/representation.hpp"

namespace folkscope {

struct LabeledDataset {
  std::vector<FeatureVector> instances;
  std::vector<std::size_t> labels;      // index into categories
  std::vector<std::string> categories;  // dense ids 0..k-1
  std::size_t dimension = 0;            // 0: derived from the instances

  std::size_t size() const noexcept { return instances.size(); }
  std::size_t category_count() const noexcept { return categories.size(); }
  // max(dimension, largest feature id + 1)
  std::size_t feature_dimension() const noexcept;
  void add(FeatureVector x, std::size_t label);
  // Throws InvalidArgument when labels are out of range or sizes disagree.
  void validate() const;
};

enum class MulticlassScheme { native, one_vs_all, one_vs_one };
enum class LearningMode { supervised, self_training };

MulticlassScheme parse_scheme(std::string_view name);
std::string scheme_name(MulticlassScheme scheme);

struct TrainConfig {
  double penalty = 1.0;  // C
  std::size_t epochs = 50;
  std::uint64_t seed = 1;
  MulticlassScheme scheme = MulticlassScheme::native;
  LearningMode mode = LearningMode::supervised;
  // Squared hinge (exponent d = 2) instead of the plain hinge.
  bool squared_hinge = false;

  void validate() const;
};

struct TrainingMetadata {
  std::string scheme;
  std::string learning_mode;
  double penalty = 0;
  std::size_t epochs = 0;
  std::uint64_t seed = 0;
  bool squared_hinge = false;
  std::size_t instances = 0;
  double objective = 0;  // final primal objective of the returned iterate

  bool operator==(const TrainingMetadata&) const = default;
};

// Index of the largest value; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> scores);

// k weight rows plus biases; margin_m = w_m . x + b_m.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::size_t categories, std::size_t dimension);

  std::size_t categories() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return d_; }
  std::span<const double> weights(std::size_t m) const { return {w_.data() + m * d_, d_}; }
  std::span<double> weights(std::size_t m) { return {w_.data() + m * d_, d_}; }
  double bias(std::size_t m) const { return b_.at(m); }
  void set_bias(std::size_t m, double b) { b_.at(m) = b; }

  // Feature ids >= dimension() are ignored.
  std::vector<double> margins(const FeatureVector& x) const;
  std::size_t predict(const FeatureVector& x) const;

  bool operator==(const LinearModel&) const = default;

 private:
  std::size_t k_ = 0;
  std::size_t d_ = 0;
  std::vector<double> w_;
  std::vector<double> b_;
};

// Two-class hyperplane; positive side is category 1 of the training set.
struct BinaryModel {
  std::vector<double> weights;
  double bias = 0;
  double margin(const FeatureVector& x) const noexcept { return x.dot(weights) + bias; }
  bool operator==(const BinaryModel&) const = default;
};

struct PairwiseModel {
  std::size_t first;   // wins when the margin is >= 0
  std::size_t second;  // wins when the margin is < 0
  BinaryModel model;
  bool operator==(const PairwiseModel&) const = default;
};

// A trained multiclass predictor under any of the three schemes.
class Classifier {
 public:
  Classifier() = default;
  Classifier(MulticlassScheme scheme, std::vector<std::string> categories, LinearModel linear,
             TrainingMetadata meta);
  Classifier(std::vector<std::string> categories, std::size_t dimension,
             std::vector<PairwiseModel> pairs, TrainingMetadata meta);

  MulticlassScheme scheme() const noexcept { return scheme_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }
  std::size_t dimension() const noexcept { return dimension_; }
  // Native and one-vs-all rows; empty for one-vs-one.
  const LinearModel& linear() const noexcept { return linear_; }
  const std::vector<PairwiseModel>& pairs() const noexcept { return pairs_; }
  const TrainingMetadata& metadata() const noexcept { return meta_; }
  // Number of underlying binary/joint models.
  std::size_t submodel_count() const noexcept;

  // Per-category scores. One-vs-one reports each category's summed signed
  // pairwise margins.
  std::vector<double> margins(const FeatureVector& x) const;
  // One-vs-one pairwise wins per category; empty for the other schemes.
  std::vector<std::size_t> votes(const FeatureVector& x) const;
  std::size_t predict(const FeatureVector& x) const;

  bool operator==(const Classifier&) const = default;

 private:
  MulticlassScheme scheme_ = MulticlassScheme::native;
  std::vector<std::string> categories_;
  std::size_t dimension_ = 0;
  LinearModel linear_;
  std::vector<PairwiseModel> pairs_;
  TrainingMetadata meta_;
};

// Joint k-class hinge objective, stochastic subgradient with averaging.
LinearModel train_native(const LabeledDataset& data, const TrainConfig& cfg);
// Requires exactly two populated categories.
BinaryModel train_binary(const LabeledDataset& data, const TrainConfig& cfg);
Classifier train_one_vs_all(const LabeledDataset& data, const TrainConfig& cfg);
Classifier train_one_vs_one(const LabeledDataset& data, const TrainConfig& cfg);
// Supervised training under cfg.scheme (cfg.mode is ignored).
Classifier train(const LabeledDataset& data, const TrainConfig& cfg);

struct SelfTrainingResult {
  Classifier model;          // retrained on labeled + pseudo-labeled
  Classifier initial_model;  // trained on labeled only
  std::vector<std::size_t> pseudo_label_counts;  // per category
};

SelfTrainingResult self_train_2step(const LabeledDataset& labeled,
                                    std::span<const FeatureVector> unlabeled, const TrainConfig& cfg);

// Share of instances whose predicted label equals the true label; labels
// are matched by name so the test set may carry its own category table.
double evaluate_accuracy(const Classifier& model, const LabeledDataset& test);
std::vector<std::size_t> predict_all(const Classifier& model, std::span<const FeatureVector> xs);

// 1/2 sum ||w_m||^2 + C sum_i sum_{m != y_i} max(0, 2 - (s_{y_i} - s_m))^d with
// the bias counted as the weight of a constant feature.
double objective_value(const LinearModel& model, const LabeledDataset& data, const TrainConfig& cfg);
// Subgradient of objective_value, shaped like the model.
LinearModel objective_subgradient(const LinearModel& model, const LabeledDataset& data,
                                  const TrainConfig& cfg);
// 1/2 ||w||^2 + C sum_i max(0, 1 - y_i (w.x_i + b))^d, y = +1 for category 1.
double objective_value(const BinaryModel& model, const LabeledDataset& data, const TrainConfig& cfg);

std::string serialize_classifier(const Classifier& model);
Classifier deserialize_classifier(std::string_view document);

}  // namespace folkscope
