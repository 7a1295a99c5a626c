#include "folkscope/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "folkscope/error.hpp"
#include "json.hpp"

namespace folkscope {

using nlohmann::json;

std::size_t LabeledDataset::feature_dimension() const noexcept {
  std::size_t d = dimension;
  for (const auto& x : instances) {
    if (!x.empty()) d = std::max<std::size_t>(d, static_cast<std::size_t>(x.max_id()) + 1);
  }
  return d;
}

void LabeledDataset::add(FeatureVector x, std::size_t label) {
  instances.push_back(std::move(x));
  labels.push_back(label);
}

void LabeledDataset::validate() const {
  if (instances.size() != labels.size()) throw InvalidArgument("instance and label counts differ");
  for (std::size_t l : labels) {
    if (l >= categories.size()) throw InvalidArgument("label id out of range of the category table");
  }
}

MulticlassScheme parse_scheme(std::string_view name) {
  if (name == "native") return MulticlassScheme::native;
  if (name == "one-vs-all" || name == "ova") return MulticlassScheme::one_vs_all;
  if (name == "one-vs-one" || name == "ovo") return MulticlassScheme::one_vs_one;
  throw InvalidArgument("unknown multiclass scheme '" + std::string(name) +
                        "' (native|one-vs-all|one-vs-one)");
}

std::string scheme_name(MulticlassScheme scheme) {
  switch (scheme) {
    case MulticlassScheme::native: return "native";
    case MulticlassScheme::one_vs_all: return "one-vs-all";
    case MulticlassScheme::one_vs_one: return "one-vs-one";
  }
  return "native";
}

void TrainConfig::validate() const {
  if (!(penalty > 0.0) || !std::isfinite(penalty)) throw InvalidArgument("penalty C must be > 0");
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
}

std::size_t argmax(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

LinearModel::LinearModel(std::size_t categories, std::size_t dimension)
    : k_(categories), d_(dimension), w_(categories * dimension, 0.0), b_(categories, 0.0) {}

std::vector<double> LinearModel::margins(const FeatureVector& x) const {
  std::vector<double> out(k_);
  for (std::size_t m = 0; m < k_; ++m) out[m] = x.dot(weights(m)) + b_[m];
  return out;
}

std::size_t LinearModel::predict(const FeatureVector& x) const { return argmax(margins(x)); }

namespace {

// Training problem: instances plus per-instance targets. For the joint
// multiclass loss a target is a category id; for the binary loss it is +1/-1.
struct Problem {
  std::vector<const FeatureVector*> xs;
  std::vector<int> targets;
  std::size_t rows = 0;
  std::size_t dim = 0;  // without the bias column
  bool binary = false;
};

// Rows of length dim + 1, the last column holding the bias weight.
std::size_t stride(const Problem& p) { return p.dim + 1; }

double row_score(std::span<const double> row, std::size_t dim, const FeatureVector& x) {
  double s = row[dim];
  for (const auto& e : x.entries()) {
    if (e.id < dim) s += e.weight * row[e.id];
  }
  return s;
}

// Loss of one instance given its scores; fills coef so that the loss
// subgradient for row m is coef[m] * (x, 1).
double instance_loss(const Problem& p, std::span<const double> scores, int target, bool squared,
                     std::span<double> coef) {
  std::fill(coef.begin(), coef.end(), 0.0);
  double loss = 0.0;
  if (p.binary) {
    const double h = 1.0 - static_cast<double>(target) * scores[0];
    if (h > 0.0) {
      loss = squared ? h * h : h;
      coef[0] = -static_cast<double>(target) * (squared ? 2.0 * h : 1.0);
    }
    return loss;
  }
  const auto y = static_cast<std::size_t>(target);
  for (std::size_t m = 0; m < p.rows; ++m) {
    if (m == y) continue;
    const double h = 2.0 - (scores[y] - scores[m]);
    if (h <= 0.0) continue;
    loss += squared ? h * h : h;
    const double g = squared ? 2.0 * h : 1.0;
    coef[m] += g;
    coef[y] -= g;
  }
  return loss;
}

double dense_objective(const Problem& p, std::span<const double> w, double penalty, bool squared) {
  const std::size_t s = stride(p);
  double reg = 0.0;
  for (double v : w) reg += v * v;
  std::vector<double> scores(p.rows), coef(p.rows);
  double loss = 0.0;
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    for (std::size_t m = 0; m < p.rows; ++m) scores[m] = row_score(w.subspan(m * s, s), p.dim, *p.xs[i]);
    loss += instance_loss(p, scores, p.targets[i], squared, coef);
  }
  return 0.5 * reg + penalty * loss;
}

std::vector<double> dense_subgradient(const Problem& p, std::span<const double> w, double penalty,
                                      bool squared) {
  const std::size_t s = stride(p);
  std::vector<double> g(w.begin(), w.end());
  std::vector<double> scores(p.rows), coef(p.rows);
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    for (std::size_t m = 0; m < p.rows; ++m) scores[m] = row_score(w.subspan(m * s, s), p.dim, *p.xs[i]);
    instance_loss(p, scores, p.targets[i], squared, coef);
    for (std::size_t m = 0; m < p.rows; ++m) {
      if (coef[m] == 0.0) continue;
      auto row = std::span<double>(g).subspan(m * s, s);
      for (const auto& e : p.xs[i]->entries()) {
        if (e.id < p.dim) row[e.id] += penalty * coef[m] * e.weight;
      }
      row[p.dim] += penalty * coef[m];
    }
  }
  return g;
}

// Uniform integer in [0, n) from raw 64-bit draws, identical on every
// platform (std::uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Dense weights stored as scale * values so the per-step shrink is O(1).
class ScaledWeights {
 public:
  ScaledWeights(std::size_t rows, std::size_t stride) : stride_(stride), values_(rows * stride, 0.0) {}

  double score(std::size_t m, std::size_t dim, const FeatureVector& x) const {
    return scale_ * row_score(std::span<const double>(values_).subspan(m * stride_, stride_), dim, x);
  }

  void shrink(double factor) {
    if (factor == 0.0) {
      std::fill(values_.begin(), values_.end(), 0.0);
      scale_ = 1.0;
      return;
    }
    scale_ *= factor;
    if (scale_ < 1e-9) {
      for (double& v : values_) v *= scale_;
      scale_ = 1.0;
    }
  }

  // row m += amount * (x, 1)
  void add(std::size_t m, std::size_t dim, const FeatureVector& x, double amount) {
    const double a = amount / scale_;
    double* row = values_.data() + m * stride_;
    for (const auto& e : x.entries()) {
      if (e.id < dim) row[e.id] += a * e.weight;
    }
    row[dim] += a;
  }

  std::vector<double> materialize() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale_ * values_[i];
    return out;
  }

 private:
  std::size_t stride_;
  std::vector<double> values_;
  double scale_ = 1.0;
};

struct Solution {
  std::vector<double> weights;
  double objective;
};

// Pegasos: eta_t = 1/(lambda t), lambda = 1/(C l). At every epoch end the
// current iterate and the running mean of epoch-end iterates are scored on
// the exact objective; the best candidate seen so far is returned. A run
// with E epochs is a prefix of a run with 2E epochs, so the returned
// objective never increases with the budget.
Solution solve(const Problem& p, const TrainConfig& cfg) {
  const std::size_t n = p.xs.size();
  const std::size_t s = stride(p);
  const double lambda = 1.0 / (cfg.penalty * static_cast<double>(n));

  ScaledWeights w(p.rows, s);
  std::vector<double> mean(p.rows * s, 0.0);
  Solution best{std::vector<double>(p.rows * s, 0.0), 0.0};
  best.objective = dense_objective(p, best.weights, cfg.penalty, cfg.squared_hinge);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> scores(p.rows), coef(p.rows);
  std::uint64_t t = 0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const FeatureVector& x = *p.xs[i];
      for (std::size_t m = 0; m < p.rows; ++m) scores[m] = w.score(m, p.dim, x);
      instance_loss(p, scores, p.targets[i], cfg.squared_hinge, coef);
      w.shrink(1.0 - 1.0 / static_cast<double>(t));
      for (std::size_t m = 0; m < p.rows; ++m) {
        if (coef[m] != 0.0) w.add(m, p.dim, x, -eta * coef[m]);
      }
    }
    auto current = w.materialize();
    const double inv = 1.0 / static_cast<double>(epoch);
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += (current[j] - mean[j]) * inv;
    for (auto* cand : {&mean, &current}) {
      const double obj = dense_objective(p, *cand, cfg.penalty, cfg.squared_hinge);
      if (obj < best.objective) best = {*cand, obj};
    }
  }
  return best;
}

void require_populated(const LabeledDataset& data) {
  data.validate();
  if (data.instances.empty()) throw InvalidArgument("training set is empty");
  if (data.category_count() < 2) throw InvalidArgument("training needs at least two categories");
  std::vector<std::size_t> counts(data.category_count(), 0);
  for (std::size_t l : data.labels) ++counts[l];
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] == 0) {
      throw InvalidArgument("category '" + data.categories[m] + "' has no training instances");
    }
  }
}

LinearModel to_linear(std::span<const double> dense, std::size_t rows, std::size_t dim) {
  LinearModel model(rows, dim);
  for (std::size_t m = 0; m < rows; ++m) {
    auto src = dense.subspan(m * (dim + 1), dim + 1);
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(dim), model.weights(m).begin());
    model.set_bias(m, src[dim]);
  }
  return model;
}

std::vector<double> to_dense(const LinearModel& model) {
  const std::size_t d = model.dimension();
  std::vector<double> dense(model.categories() * (d + 1));
  for (std::size_t m = 0; m < model.categories(); ++m) {
    auto row = model.weights(m);
    std::copy(row.begin(), row.end(), dense.begin() + static_cast<std::ptrdiff_t>(m * (d + 1)));
    dense[m * (d + 1) + d] = model.bias(m);
  }
  return dense;
}

Problem native_problem(const LabeledDataset& data, std::size_t dim) {
  Problem p;
  p.rows = data.category_count();
  p.dim = dim;
  for (std::size_t i = 0; i < data.size(); ++i) {
    p.xs.push_back(&data.instances[i]);
    p.targets.push_back(static_cast<int>(data.labels[i]));
  }
  return p;
}

// Binary sub-problem over the instances whose label passes `side`
// (+1 positive, -1 negative, 0 skip).
template <class Side>
Problem binary_problem(const LabeledDataset& data, std::size_t dim, Side side) {
  Problem p;
  p.rows = 1;
  p.dim = dim;
  p.binary = true;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int y = side(data.labels[i]);
    if (y == 0) continue;
    p.xs.push_back(&data.instances[i]);
    p.targets.push_back(y);
  }
  return p;
}

BinaryModel to_binary(const std::vector<double>& dense, std::size_t dim) {
  BinaryModel b;
  b.weights.assign(dense.begin(), dense.begin() + static_cast<std::ptrdiff_t>(dim));
  b.bias = dense[dim];
  return b;
}

TrainingMetadata metadata_for(const LabeledDataset& data, const TrainConfig& cfg, double objective) {
  TrainingMetadata meta;
  meta.scheme = scheme_name(cfg.scheme);
  meta.learning_mode = cfg.mode == LearningMode::self_training ? "self-training" : "supervised";
  meta.penalty = cfg.penalty;
  meta.epochs = cfg.epochs;
  meta.seed = cfg.seed;
  meta.squared_hinge = cfg.squared_hinge;
  meta.instances = data.size();
  meta.objective = objective;
  return meta;
}

}  // namespace

LinearModel train_native(const LabeledDataset& data, const TrainConfig& cfg) {
  cfg.validate();
  require_populated(data);
  const std::size_t dim = data.feature_dimension();
  auto sol = solve(native_problem(data, dim), cfg);
  return to_linear(sol.weights, data.category_count(), dim);
}

BinaryModel train_binary(const LabeledDataset& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.category_count() != 2) {
    throw InvalidArgument("binary training needs exactly two categories, got " +
                          std::to_string(data.category_count()));
  }
  require_populated(data);
  const std::size_t dim = data.feature_dimension();
  auto p = binary_problem(data, dim, [](std::size_t l) { return l == 1 ? 1 : -1; });
  return to_binary(solve(p, cfg).weights, dim);
}

Classifier train_one_vs_all(const LabeledDataset& data, const TrainConfig& cfg) {
  cfg.validate();
  require_populated(data);
  const std::size_t dim = data.feature_dimension();
  const std::size_t k = data.category_count();
  LinearModel rows(k, dim);
  double objective = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    auto p = binary_problem(data, dim, [m](std::size_t l) { return l == m ? 1 : -1; });
    auto sol = solve(p, cfg);
    objective += sol.objective;
    std::copy(sol.weights.begin(), sol.weights.begin() + static_cast<std::ptrdiff_t>(dim),
              rows.weights(m).begin());
    rows.set_bias(m, sol.weights[dim]);
  }
  TrainConfig tagged = cfg;
  tagged.scheme = MulticlassScheme::one_vs_all;
  return Classifier(MulticlassScheme::one_vs_all, data.categories, std::move(rows),
                    metadata_for(data, tagged, objective));
}

Classifier train_one_vs_one(const LabeledDataset& data, const TrainConfig& cfg) {
  cfg.validate();
  require_populated(data);
  const std::size_t dim = data.feature_dimension();
  const std::size_t k = data.category_count();
  std::vector<PairwiseModel> pairs;
  pairs.reserve(k * (k - 1) / 2);
  double objective = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      auto p = binary_problem(data, dim, [a, b](std::size_t l) { return l == a ? 1 : (l == b ? -1 : 0); });
      auto sol = solve(p, cfg);
      objective += sol.objective;
      pairs.push_back({a, b, to_binary(sol.weights, dim)});
    }
  }
  TrainConfig tagged = cfg;
  tagged.scheme = MulticlassScheme::one_vs_one;
  return Classifier(data.categories, dim, std::move(pairs), metadata_for(data, tagged, objective));
}

Classifier train(const LabeledDataset& data, const TrainConfig& cfg) {
  switch (cfg.scheme) {
    case MulticlassScheme::native: {
      auto model = train_native(data, cfg);
      const double obj = objective_value(model, data, cfg);
      return Classifier(MulticlassScheme::native, data.categories, std::move(model),
                        metadata_for(data, cfg, obj));
    }
    case MulticlassScheme::one_vs_all: return train_one_vs_all(data, cfg);
    case MulticlassScheme::one_vs_one: return train_one_vs_one(data, cfg);
  }
  throw InvalidArgument("unknown scheme");
}

Classifier::Classifier(MulticlassScheme scheme, std::vector<std::string> categories, LinearModel linear,
                       TrainingMetadata meta)
    : scheme_(scheme),
      categories_(std::move(categories)),
      dimension_(linear.dimension()),
      linear_(std::move(linear)),
      meta_(std::move(meta)) {
  if (scheme_ == MulticlassScheme::one_vs_one) {
    throw InvalidArgument("one-vs-one classifiers are built from pairwise models");
  }
  if (linear_.categories() != categories_.size()) {
    throw InvalidArgument("model rows do not match the category table");
  }
}

Classifier::Classifier(std::vector<std::string> categories, std::size_t dimension,
                       std::vector<PairwiseModel> pairs, TrainingMetadata meta)
    : scheme_(MulticlassScheme::one_vs_one),
      categories_(std::move(categories)),
      dimension_(dimension),
      pairs_(std::move(pairs)),
      meta_(std::move(meta)) {
  for (const auto& p : pairs_) {
    if (p.first >= categories_.size() || p.second >= categories_.size() || p.first == p.second) {
      throw InvalidArgument("pairwise model refers to an invalid category pair");
    }
  }
}

std::size_t Classifier::submodel_count() const noexcept {
  switch (scheme_) {
    case MulticlassScheme::native: return 1;
    case MulticlassScheme::one_vs_all: return linear_.categories();
    case MulticlassScheme::one_vs_one: return pairs_.size();
  }
  return 0;
}

std::vector<double> Classifier::margins(const FeatureVector& x) const {
  if (scheme_ != MulticlassScheme::one_vs_one) return linear_.margins(x);
  std::vector<double> out(categories_.size(), 0.0);
  for (const auto& p : pairs_) {
    const double s = p.model.margin(x);
    out[p.first] += s;
    out[p.second] -= s;
  }
  return out;
}

std::vector<std::size_t> Classifier::votes(const FeatureVector& x) const {
  if (scheme_ != MulticlassScheme::one_vs_one) return {};
  std::vector<std::size_t> out(categories_.size(), 0);
  for (const auto& p : pairs_) ++out[p.model.margin(x) >= 0.0 ? p.first : p.second];
  return out;
}

std::size_t Classifier::predict(const FeatureVector& x) const {
  if (scheme_ != MulticlassScheme::one_vs_one) return argmax(linear_.margins(x));
  std::vector<std::size_t> wins(categories_.size(), 0);
  std::vector<double> summed(categories_.size(), 0.0);
  for (const auto& p : pairs_) {
    const double s = p.model.margin(x);
    ++wins[s >= 0.0 ? p.first : p.second];
    summed[p.first] += s;
    summed[p.second] -= s;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < wins.size(); ++c) {
    if (wins[c] > wins[best] || (wins[c] == wins[best] && summed[c] > summed[best])) best = c;
  }
  return best;
}

SelfTrainingResult self_train_2step(const LabeledDataset& labeled,
                                    std::span<const FeatureVector> unlabeled, const TrainConfig& cfg) {
  TrainConfig supervised = cfg;
  supervised.mode = LearningMode::supervised;
  SelfTrainingResult result;
  result.initial_model = train(labeled, supervised);
  result.pseudo_label_counts.assign(labeled.category_count(), 0);

  LabeledDataset extended = labeled;
  for (const auto& x : unlabeled) {
    const std::size_t label = result.initial_model.predict(x);
    ++result.pseudo_label_counts[label];
    extended.add(x, label);
  }
  TrainConfig retrain = cfg;
  retrain.mode = LearningMode::self_training;
  result.model = train(extended, retrain);
  return result;
}

std::vector<std::size_t> predict_all(const Classifier& model, std::span<const FeatureVector> xs) {
  std::vector<std::size_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(model.predict(x));
  return out;
}

double evaluate_accuracy(const Classifier& model, const LabeledDataset& test) {
  test.validate();
  if (test.instances.empty()) throw InvalidArgument("accuracy needs a non-empty test set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (model.categories()[model.predict(test.instances[i])] == test.categories[test.labels[i]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

double objective_value(const LinearModel& model, const LabeledDataset& data, const TrainConfig& cfg) {
  data.validate();
  if (model.categories() != data.category_count()) {
    throw InvalidArgument("model and dataset disagree on the number of categories");
  }
  auto p = native_problem(data, model.dimension());
  return dense_objective(p, to_dense(model), cfg.penalty, cfg.squared_hinge);
}

LinearModel objective_subgradient(const LinearModel& model, const LabeledDataset& data,
                                  const TrainConfig& cfg) {
  data.validate();
  if (model.categories() != data.category_count()) {
    throw InvalidArgument("model and dataset disagree on the number of categories");
  }
  auto p = native_problem(data, model.dimension());
  auto g = dense_subgradient(p, to_dense(model), cfg.penalty, cfg.squared_hinge);
  return to_linear(g, model.categories(), model.dimension());
}

double objective_value(const BinaryModel& model, const LabeledDataset& data, const TrainConfig& cfg) {
  data.validate();
  const std::size_t dim = model.weights.size();
  auto p = binary_problem(data, dim, [](std::size_t l) { return l == 1 ? 1 : -1; });
  std::vector<double> dense(model.weights);
  dense.push_back(model.bias);
  return dense_objective(p, dense, cfg.penalty, cfg.squared_hinge);
}

namespace {

constexpr const char* kModelFormat = "folkscope-model/1";

json sparse_row(std::span<const double> w) {
  json out = json::array();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) out.push_back({i, w[i]});
  }
  return out;
}

std::vector<double> dense_row(const json& sparse, std::size_t dim) {
  std::vector<double> w(dim, 0.0);
  for (const auto& e : sparse) {
    const auto id = e.at(0).get<std::size_t>();
    if (id >= dim) throw ParseError("model weight id beyond dimension", 0);
    w[id] = e.at(1).get<double>();
  }
  return w;
}

}  // namespace

std::string serialize_classifier(const Classifier& model) {
  const auto& m = model.metadata();
  json doc = {
      {"format", kModelFormat},
      {"scheme", scheme_name(model.scheme())},
      {"categories", model.categories()},
      {"dimension", model.dimension()},
      {"metadata",
       {{"scheme", m.scheme},
        {"learning_mode", m.learning_mode},
        {"penalty", m.penalty},
        {"epochs", m.epochs},
        {"seed", m.seed},
        {"squared_hinge", m.squared_hinge},
        {"instances", m.instances},
        {"objective", m.objective}}},
  };
  if (model.scheme() == MulticlassScheme::one_vs_one) {
    json pairs = json::array();
    for (const auto& p : model.pairs()) {
      pairs.push_back({{"first", p.first}, {"second", p.second}, {"bias", p.model.bias},
                       {"weights", sparse_row(p.model.weights)}});
    }
    doc["pairs"] = std::move(pairs);
  } else {
    json rows = json::array();
    const auto& lin = model.linear();
    for (std::size_t c = 0; c < lin.categories(); ++c) {
      rows.push_back({{"bias", lin.bias(c)}, {"weights", sparse_row(lin.weights(c))}});
    }
    doc["rows"] = std::move(rows);
  }
  return doc.dump();
}

Classifier deserialize_classifier(std::string_view document) {
  try {
    const json doc = json::parse(document);
    if (doc.value("format", "") != kModelFormat) {
      throw ParseError("unsupported model format '" + doc.value("format", "") + "'", 0);
    }
    const auto scheme = parse_scheme(doc.at("scheme").get<std::string>());
    auto categories = doc.at("categories").get<std::vector<std::string>>();
    const auto dim = doc.at("dimension").get<std::size_t>();
    const auto& jm = doc.at("metadata");
    TrainingMetadata meta;
    meta.scheme = jm.at("scheme").get<std::string>();
    meta.learning_mode = jm.at("learning_mode").get<std::string>();
    meta.penalty = jm.at("penalty").get<double>();
    meta.epochs = jm.at("epochs").get<std::size_t>();
    meta.seed = jm.at("seed").get<std::uint64_t>();
    meta.squared_hinge = jm.at("squared_hinge").get<bool>();
    meta.instances = jm.at("instances").get<std::size_t>();
    meta.objective = jm.at("objective").get<double>();

    if (scheme == MulticlassScheme::one_vs_one) {
      std::vector<PairwiseModel> pairs;
      for (const auto& jp : doc.at("pairs")) {
        pairs.push_back({jp.at("first").get<std::size_t>(), jp.at("second").get<std::size_t>(),
                         {dense_row(jp.at("weights"), dim), jp.at("bias").get<double>()}});
      }
      return Classifier(std::move(categories), dim, std::move(pairs), std::move(meta));
    }
    const auto& rows = doc.at("rows");
    LinearModel lin(rows.size(), dim);
    for (std::size_t c = 0; c < rows.size(); ++c) {
      auto w = dense_row(rows[c].at("weights"), dim);
      std::copy(w.begin(), w.end(), lin.weights(c).begin());
      lin.set_bias(c, rows[c].at("bias").get<double>());
    }
    return Classifier(scheme, std::move(categories), std::move(lin), std::move(meta));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what(), 0);
  }
}

}  // namespace folkscope
