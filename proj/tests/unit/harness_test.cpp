#include <gtest/gtest.h>

#include <sstream>

#include "folkscope/error.hpp"
#include "folkscope/generator.hpp"
#include "folkscope/harness.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace folkscope;
using testutil::bm;

namespace {

struct Corpus {
  Folksonomy f;
  std::vector<CategoryAssignment> labels;
};

Corpus topical(std::uint64_t seed, double strength = 0.9) {
  RegimeConfig c;
  c.users = 80;
  c.resources = 60;
  c.bookmarks_per_user_min = 10;
  c.bookmarks_per_user_max = 10;
  c.tag_pool = 300;
  c.categories = 3;
  c.topic_tags = 15;
  c.topic_strength = strength;
  c.seed = seed;
  auto g = generate(c);
  return {Folksonomy::ingest(g.bookmarks), g.categories};
}

ExperimentSpec base_spec() {
  ExperimentSpec s;
  s.sizes = {6, 20};
  s.runs = 2;
  s.train.epochs = 20;
  s.min_category_resources = 1;
  return s;
}

}  // namespace

TEST(FeatureSource, Names) {
  for (auto n : {"weighted-fta", "ranks-topk", "tf", "tf-irf", "tf-iuf", "tf-ibf", "text"}) {
    EXPECT_EQ(feature_source_name(parse_feature_source(n)), n);
  }
  EXPECT_THROW(parse_feature_source("tf-idf"), InvalidArgument);
  EXPECT_TRUE(parse_feature_source("text").text.stem);
}

TEST(Partition, DeterministicAndProportional) {
  std::size_t in = 0;
  for (int i = 0; i < 4000; ++i) {
    const auto id = "r" + std::to_string(i);
    const bool a = in_test_partition(id, 3, 0.4);
    EXPECT_EQ(a, in_test_partition(id, 3, 0.4));
    in += a;
  }
  EXPECT_NEAR(static_cast<double>(in) / 4000.0, 0.4, 0.03);
  EXPECT_FALSE(in_test_partition("x", 1, 0.0));
}

TEST(Experiment, SingleRunMeanEqualsAccuracy) {
  auto c = topical(1);
  auto s = base_spec();
  s.runs = 1;
  auto r = run_experiment(s, c.f, c.labels);
  for (const auto& size : r.results) EXPECT_EQ(size.mean_accuracy, size.runs[0].accuracy);
  EXPECT_EQ(r.pool_size + r.test_size, r.labeled_resources);
}

TEST(Experiment, Reproducible) {
  auto c = topical(2);
  auto s = base_spec();
  s.committee = {parse_feature_source("tf-irf"), parse_feature_source("unweighted-fta")};
  EXPECT_EQ(experiment_report_json(run_experiment(s, c.f, c.labels)),
            experiment_report_json(run_experiment(s, c.f, c.labels)));
}

TEST(Experiment, CommitteeAndSelfTrainingFields) {
  auto c = topical(3);
  auto s = base_spec();
  s.committee = {parse_feature_source("tf-iuf")};
  s.train.mode = LearningMode::self_training;
  auto r = run_experiment(s, c.f, c.labels);
  const auto& run = r.results[0].runs[0];
  EXPECT_EQ(run.member_accuracies.size(), 2u);
  EXPECT_TRUE(run.committee_accuracy.has_value());
  // sized by the categories present in the training subset
  EXPECT_FALSE(run.pseudo_label_counts.empty());
  EXPECT_LE(run.pseudo_label_counts.size(), 3u);
  EXPECT_TRUE(r.results[0].mean_committee_accuracy.has_value());
}

TEST(Experiment, SizeTooLargeNamesSize) {
  auto c = topical(4);
  auto s = base_spec();
  s.sizes = {5, 1000};
  try {
    run_experiment(s, c.f, c.labels);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
  }
  s.sizes = {};
  EXPECT_THROW(run_experiment(s, c.f, c.labels), InvalidArgument);
  s.sizes = {5};
  s.runs = 0;
  EXPECT_THROW(run_experiment(s, c.f, c.labels), InvalidArgument);
}

TEST(Experiment, MoreDataDoesNotHurtOnSeparableToy) {
  // Each category owns a disjoint tag; every resource carries its category tag.
  std::vector<Bookmark> b;
  std::vector<CategoryAssignment> labels;
  for (int r = 0; r < 90; ++r) {
    const auto cat = "c" + std::to_string(r % 3);
    const auto id = "r" + std::to_string(r);
    labels.push_back({id, cat, std::nullopt});
    for (int u = 0; u < 3; ++u) b.push_back(bm("u" + std::to_string((r + u) % 17), id, {"tag-" + cat, "n" + std::to_string(r % 7)}));
  }
  auto f = Folksonomy::ingest(b);
  auto s = base_spec();
  s.sizes = {6, 30};
  s.runs = 6;
  auto r = run_experiment(s, f, labels);
  EXPECT_GE(r.results[1].mean_accuracy, r.results[0].mean_accuracy - 0.02);
  EXPECT_EQ(r.results[1].mean_accuracy, 1.0);
}

TEST(TopK, SaturationEqualsFta) {
  auto c = topical(5);
  std::size_t max_tags = 0;
  for (const auto& [id, e] : c.f.resources()) max_tags = std::max(max_tags, e.weights.size());
  auto s = base_spec();
  std::vector<std::size_t> ks{1, max_tags};
  auto r = run_topk_sweep(s, ks, c.f, c.labels);
  ASSERT_EQ(r.topk.size(), 2u);
  for (std::size_t i = 0; i < r.fta.results.size(); ++i) {
    EXPECT_EQ(r.topk[1].results[i].mean_accuracy, r.fta.results[i].mean_accuracy);
  }
  std::vector<std::size_t> bad{0};
  EXPECT_THROW(run_topk_sweep(s, bad, c.f, c.labels), InvalidArgument);
}

TEST(Bundle, TrainEvaluateRoundTrip) {
  auto c = topical(6);
  BundleSpec spec;
  spec.train.epochs = 20;
  spec.train.scheme = MulticlassScheme::one_vs_all;
  auto bundle = train_bundle(spec, c.f, c.labels);
  auto back = deserialize_bundle(serialize_bundle(bundle));
  EXPECT_EQ(back.classifier, bundle.classifier);
  EXPECT_EQ(back.vocabulary, bundle.vocabulary);
  EXPECT_EQ(back.source, bundle.source);
  auto a = evaluate_bundle(bundle, c.f, c.labels, false);
  auto b = evaluate_bundle(back, c.f, c.labels, false);
  EXPECT_EQ(a.predictions, b.predictions);
  EXPECT_GT(a.instances, 0u);
  EXPECT_GT(evaluate_bundle(bundle, c.f, c.labels, true).instances, a.instances);
  EXPECT_THROW(deserialize_bundle("{}"), ParseError);
}

TEST(Bundle, SelfTrainingUsesUnlabeledResources) {
  auto c = topical(7);
  auto labels = c.labels;
  labels.resize(labels.size() / 2);
  BundleSpec spec;
  spec.train.epochs = 10;
  spec.train.mode = LearningMode::self_training;
  auto bundle = train_bundle(spec, c.f, labels);
  std::size_t pseudo = 0;
  for (auto n : bundle.pseudo_label_counts) pseudo += n;
  EXPECT_GT(pseudo, 0u);
}

TEST(Descriptiveness, TagsMatchingText) {
  auto f = Folksonomy::ingest({bm("u1", "r1", {"apple", "pie"}), bm("u2", "r1", {"zzz"}), bm("u1", "r2", {"car"})});
  ResourceTexts texts{{"r1", "apple pie"}, {"r2", "truck"}};
  TextPipelineConfig cfg;
  cfg.stem = false;
  std::set<std::string> u1{"u1"};
  auto d = tag_descriptiveness(f, texts, &u1, cfg);
  EXPECT_EQ(d.resources, 2u);
  EXPECT_NEAR(d.value, 0.5, 1e-12);  // r1 identical, r2 disjoint
  std::set<std::string> nobody{"ghost"};
  EXPECT_THROW(tag_descriptiveness(f, texts, &nobody, cfg), InvalidArgument);
}

TEST(Texts, ReadAndMerge) {
  std::istringstream in("r1\thello world\nr2\tbye\nr1\tagain\n");
  auto t = read_texts(in);
  EXPECT_EQ(t.at("r1"), "hello world again");
  std::istringstream bad("no tab here\n");
  EXPECT_THROW(read_texts(bad), ParseError);
}

TEST(Reports, SectionsAndSeeds) {
  auto c = topical(8);
  auto s = base_spec();
  s.base_seed = 42;
  auto doc = nlohmann::json::parse(experiment_report_json(run_experiment(s, c.f, c.labels)));
  EXPECT_TRUE(doc.contains("meta") && doc.contains("data") && doc.contains("results"));
  EXPECT_EQ(doc["meta"]["config"]["base_seed"], 42);
  EXPECT_EQ(doc["results"]["sizes"][0]["runs"][1]["seed"], 43);

  auto f = Folksonomy::ingest({bm("u1", "r1", {"a", "b"}, 1), bm("u2", "r1", {"b"}, 2)});
  auto stats = nlohmann::json::parse(statistics_report_json(f, {}));
  EXPECT_EQ(stats["results"]["tags_per_bookmark"], 1.5);
  EXPECT_EQ(stats["data"]["bookmarks"]["annotated"], 2);
}
