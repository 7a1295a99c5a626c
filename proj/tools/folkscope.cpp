// folkscope command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "folkscope/folkscope.h"

namespace {

struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(fs_status s) {
  if (s != FS_OK) throw RuntimeFailure(fs_last_error());
}

// Owns a string handed out by the library.
struct Text {
  char* p = nullptr;
  ~Text() { fs_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

struct FolksonomyHandle {
  fs_folksonomy* p = nullptr;
  ~FolksonomyHandle() { fs_folksonomy_free(p); }
};

struct ModelHandle {
  fs_model* p = nullptr;
  ~ModelHandle() { fs_model_free(p); }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write '" + path + "'");
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
  if (!out) throw RuntimeFailure("write failed for '" + path + "'");
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot open '" + path + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Common {
  std::uint64_t seed = 1;
  std::string output;
};

struct CorpusArgs {
  std::string bookmarks;
  bool strip = false;
};

void add_corpus(CLI::App* cmd, CorpusArgs& a) {
  cmd->add_option("bookmarks", a.bookmarks, "Bookmark file, one JSON record per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_flag("--strip-reading-state", a.strip, "Drop read / currently-reading / to-read tags");
}

void load(const CorpusArgs& a, FolksonomyHandle& f) {
  check(fs_folksonomy_load(a.bookmarks.c_str(), a.strip ? 1 : 0, &f.p));
}

struct TrainArgs {
  std::string source = "weighted-fta";
  std::size_t k = 10;
  std::string scheme = "native";
  double penalty = 1.0;
  std::size_t epochs = 50;
  bool self_train = false;
  bool squared_hinge = false;
  std::string level = "top";
  double test_fraction = 0.4;
  std::size_t min_category_resources = 0;  // 0: command default
  double min_df = 0.0;
  std::string categories;
  std::string texts;
};

void add_train(CLI::App* cmd, TrainArgs& t) {
  cmd->add_option("--categories", t.categories, "Category file (resource<TAB>top[<TAB>second])")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--texts", t.texts, "Resource texts (resource<TAB>text)")->check(CLI::ExistingFile);
  cmd->add_option("--source", t.source, "Feature source: representation name, tf, tf-irf, tf-iuf, tf-ibf, text")
      ->capture_default_str();
  cmd->add_option("--k", t.k, "Top-k size")->capture_default_str();
  cmd->add_option("--scheme", t.scheme, "native | one-vs-all | one-vs-one")->capture_default_str();
  cmd->add_option("--penalty", t.penalty, "Penalty C")->capture_default_str();
  cmd->add_option("--epochs", t.epochs, "Training epochs")->capture_default_str();
  cmd->add_flag("--self-train", t.self_train, "Two-step self-training over unlabeled resources");
  cmd->add_flag("--squared-hinge", t.squared_hinge, "Use the squared hinge loss");
  cmd->add_option("--level", t.level, "Category level: top | second")
      ->check(CLI::IsMember({"top", "second"}))
      ->capture_default_str();
  cmd->add_option("--test-fraction", t.test_fraction, "Share of labeled resources held out for testing")
      ->capture_default_str();
  cmd->add_option("--min-category-resources", t.min_category_resources,
                  "Prune categories with fewer labeled resources");
  cmd->add_option("--min-df", t.min_df, "Minimum document-frequency fraction for the vocabulary")
      ->capture_default_str();
}

fs_train_options train_options(const TrainArgs& t, std::uint64_t seed, std::size_t default_min_category) {
  fs_train_options o;
  fs_train_options_init(&o);
  o.source = t.source.c_str();
  o.k = t.k;
  o.scheme = t.scheme.c_str();
  o.penalty = t.penalty;
  o.epochs = t.epochs;
  o.seed = seed;
  o.self_train = t.self_train;
  o.squared_hinge = t.squared_hinge;
  o.level = t.level.c_str();
  o.test_fraction = t.test_fraction;
  o.min_category_resources = t.min_category_resources ? t.min_category_resources : default_min_category;
  o.min_df_fraction = t.min_df;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folkscope: folksonomy analytics and resource classification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(fs_version()));
  app.set_config("--config", "", "Flat key=value file of option defaults");

  Common common;
  app.add_option("--seed", common.seed, "Seed for every randomized step")->capture_default_str();

  // ingest
  CorpusArgs ingest_args;
  std::string clean_out;
  auto* ingest = app.add_subcommand("ingest", "Ingest bookmarks and report corpus counts");
  add_corpus(ingest, ingest_args);
  ingest->add_option("--write-clean", clean_out, "Write the deduplicated bookmark stream here");
  ingest->add_option("-o,--output", common.output, "Report destination (default stdout)");

  // stats
  CorpusArgs stats_args;
  fs_stats_options stats_opts;
  fs_stats_options_init(&stats_opts);
  bool no_novelty = false, allow_synthetic = false;
  std::string novelty_resource;
  auto* stats = app.add_subcommand("stats", "Tag frequency, usage and novelty statistics");
  add_corpus(stats, stats_args);
  stats->add_option("--novelty-max-rank", stats_opts.novelty_max_rank, "Deepest bookmark rank in the novelty curve")
      ->capture_default_str();
  stats->add_flag("--allow-synthetic-order", allow_synthetic, "Accept resources without recorded order");
  stats->add_flag("--no-novelty", no_novelty, "Skip the novelty section");
  stats->add_option("--popular", stats_opts.popular_min_users, "List resources with at least N annotators");
  stats->add_option("--resource", novelty_resource, "Per-bookmark novelty ratios for one resource");
  stats->add_option("-o,--output", common.output, "Report destination (default stdout)");

  // represent
  CorpusArgs rep_args;
  std::string rep_scheme = "weighted-fta", rep_texts, vocab_out;
  std::size_t rep_k = 10;
  double rep_min_df = 0.0;
  auto* represent = app.add_subcommand("represent", "Emit tag-based resource vectors");
  add_corpus(represent, rep_args);
  represent->add_option("--scheme", rep_scheme, "Representation name or text")->capture_default_str();
  represent->add_option("--k", rep_k, "Top-k size")->capture_default_str();
  represent->add_option("--min-df", rep_min_df, "Minimum document-frequency fraction")->capture_default_str();
  represent->add_option("--texts", rep_texts, "Resource texts for the text scheme")->check(CLI::ExistingFile);
  represent->add_option("--vocab", vocab_out, "Write the vocabulary (id<TAB>token<TAB>df)");
  represent->add_option("-o,--output", common.output, "Vector destination (default stdout)");

  // weight
  CorpusArgs weight_args;
  std::string weight_kind = "irf", weight_vocab;
  double weight_min_df = 0.0;
  bool correlate = false;
  auto* weight = app.add_subcommand("weight", "TF-IxF vectors or weighting correlations");
  add_corpus(weight, weight_args);
  weight->add_option("--kind", weight_kind, "irf | iuf | ibf | none")
      ->check(CLI::IsMember({"irf", "iuf", "ibf", "none"}))
      ->capture_default_str();
  weight->add_option("--min-df", weight_min_df, "Minimum document-frequency fraction")->capture_default_str();
  weight->add_option("--vocab", weight_vocab, "Write the vocabulary (id<TAB>token<TAB>df)");
  weight->add_flag("--correlate", correlate, "Report Pearson and Spearman between the weightings");
  weight->add_option("-o,--output", common.output, "Destination (default stdout)");

  // train
  CorpusArgs train_corpus;
  TrainArgs train_args;
  std::string model_out;
  auto* train = app.add_subcommand("train", "Train a classifier bundle");
  add_corpus(train, train_corpus);
  add_train(train, train_args);
  train->add_option("--model", model_out, "Model bundle destination")->required();

  // eval
  CorpusArgs eval_corpus;
  std::string eval_model, eval_categories, eval_texts, margins_out;
  bool eval_all = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a model bundle");
  add_corpus(eval, eval_corpus);
  eval->add_option("--model", eval_model, "Model bundle")->required()->check(CLI::ExistingFile);
  eval->add_option("--categories", eval_categories, "Category file")->required()->check(CLI::ExistingFile);
  eval->add_option("--texts", eval_texts, "Resource texts")->check(CLI::ExistingFile);
  eval->add_flag("--all", eval_all, "Score every labeled resource, not only the test partition");
  eval->add_option("--margins", margins_out, "Write per-instance margins here");
  eval->add_option("-o,--output", common.output, "Report destination (default stdout)");

  // committee
  std::vector<std::string> margin_files;
  bool no_normalize = false;
  std::string truth, truth_level = "top";
  auto* committee = app.add_subcommand("committee", "Combine margin files into committee predictions");
  committee->add_option("margins", margin_files, "Margin files (two or more)")
      ->required()
      ->expected(2, -1)
      ->check(CLI::ExistingFile);
  committee->add_flag("--no-normalize", no_normalize, "Sum raw margins");
  committee->add_option("--truth", truth, "Category file to score against")->check(CLI::ExistingFile);
  committee->add_option("--level", truth_level, "Level of the truth labels")
      ->check(CLI::IsMember({"top", "second"}))
      ->capture_default_str();
  committee->add_option("-o,--output", common.output, "Report destination (default stdout)");

  // behavior
  CorpusArgs beh_args;
  std::string measure = "tpp", beh_texts, profiles_out;
  std::vector<double> percents{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  auto* behavior = app.add_subcommand("behavior", "Categorizer / Describer measures and user splits");
  add_corpus(behavior, beh_args);
  behavior->add_option("--measure", measure, "tpp | trr | orphan")
      ->check(CLI::IsMember({"tpp", "trr", "orphan"}))
      ->capture_default_str();
  behavior->add_option("--percent", percents, "Split percentages")->delimiter(',')->capture_default_str();
  behavior->add_option("--texts", beh_texts, "Resource texts for tag descriptiveness")->check(CLI::ExistingFile);
  behavior->add_option("--profiles", profiles_out, "Write user<TAB>tpp<TAB>trr<TAB>orphan<TAB>assignments");
  behavior->add_option("-o,--output", common.output, "Report destination (default stdout)");

  // gen
  std::string regime, params, categories_out, resolved_out;
  std::vector<std::string> settings;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic tagging corpus");
  gen->add_option("--regime", regime, "resource-based | personomy-based | none");
  gen->add_option("--params", params, "Generator parameters (key=value lines)")->check(CLI::ExistingFile);
  gen->add_option("--set", settings, "Override one parameter: key=value (repeatable)");
  gen->add_option("--categories-out", categories_out, "Write resource categories here");
  gen->add_option("--resolved-config", resolved_out, "Write the resolved parameters here");
  gen->add_option("-o,--output", common.output, "Bookmark destination (default stdout)");

  // sweep
  CorpusArgs sweep_corpus;
  TrainArgs sweep_train;
  std::vector<std::size_t> sizes, topk;
  std::size_t runs = 6, min_users = 1;
  std::string members;
  auto* sweep = app.add_subcommand("sweep", "Training-size sweep averaged over seeded runs");
  add_corpus(sweep, sweep_corpus);
  add_train(sweep, sweep_train);
  sweep->add_option("--sizes", sizes, "Labeled training-set sizes")->delimiter(',')->required();
  sweep->add_option("--runs", runs, "Runs per size")->capture_default_str();
  sweep->add_option("--committee", members, "Extra committee sources, comma separated");
  sweep->add_option("--min-users", min_users, "Keep resources with at least N annotators")->capture_default_str();
  sweep->add_option("--topk", topk, "Run the weighted top-k sweep over these k")->delimiter(',');
  sweep->add_option("-o,--output", common.output, "Report destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "folkscope: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*ingest) {
      FolksonomyHandle f;
      load(ingest_args, f);
      Text report;
      check(fs_ingest_report(f.p, ingest_args.bookmarks.c_str(), report.out()));
      if (!clean_out.empty()) {
        Text clean;
        check(fs_write_bookmarks(f.p, clean.out()));
        emit(clean_out, clean.str());
      }
      emit(common.output, report.str());
    } else if (*stats) {
      FolksonomyHandle f;
      load(stats_args, f);
      stats_opts.include_novelty = no_novelty ? 0 : 1;
      stats_opts.allow_synthetic_order = allow_synthetic ? 1 : 0;
      stats_opts.novelty_resource = opt(novelty_resource);
      Text report;
      check(fs_statistics_report(f.p, &stats_opts, report.out()));
      emit(common.output, report.str());
    } else if (*represent) {
      FolksonomyHandle f;
      load(rep_args, f);
      Text vectors, vocab;
      check(fs_vectors(f.p, rep_scheme.c_str(), rep_k, rep_min_df, opt(rep_texts), vectors.out(),
                       vocab_out.empty() ? nullptr : vocab.out()));
      if (!vocab_out.empty()) emit(vocab_out, vocab.str());
      emit(common.output, vectors.str());
    } else if (*weight) {
      FolksonomyHandle f;
      load(weight_args, f);
      if (correlate) {
        Text report;
        check(fs_correlation_report(f.p, report.out()));
        emit(common.output, report.str());
      } else {
        const std::string source = weight_kind == "none" ? "tf" : "tf-" + weight_kind;
        Text vectors, vocab;
        check(fs_vectors(f.p, source.c_str(), 10, weight_min_df, nullptr, vectors.out(),
                         weight_vocab.empty() ? nullptr : vocab.out()));
        if (!weight_vocab.empty()) emit(weight_vocab, vocab.str());
        emit(common.output, vectors.str());
      }
    } else if (*train) {
      FolksonomyHandle f;
      load(train_corpus, f);
      auto o = train_options(train_args, common.seed, 1);
      ModelHandle m;
      check(fs_model_train(f.p, train_args.categories.c_str(), opt(train_args.texts), &o, &m.p));
      check(fs_model_save(m.p, model_out.c_str()));
      std::cerr << "folkscope: model written to " << model_out << '\n';
    } else if (*eval) {
      FolksonomyHandle f;
      load(eval_corpus, f);
      ModelHandle m;
      check(fs_model_load(eval_model.c_str(), &m.p));
      Text report, margins;
      check(fs_model_evaluate(m.p, f.p, eval_categories.c_str(), opt(eval_texts), eval_all ? 1 : 0,
                              report.out(), margins_out.empty() ? nullptr : margins.out()));
      if (!margins_out.empty()) emit(margins_out, margins.str());
      emit(common.output, report.str());
    } else if (*committee) {
      std::vector<const char*> paths;
      for (const auto& p : margin_files) paths.push_back(p.c_str());
      Text report;
      check(fs_committee(paths.data(), paths.size(), no_normalize ? 0 : 1, opt(truth), truth_level.c_str(),
                         report.out()));
      emit(common.output, report.str());
    } else if (*behavior) {
      FolksonomyHandle f;
      load(beh_args, f);
      Text report, profiles;
      check(fs_behavior(f.p, measure.c_str(), percents.data(), percents.size(), opt(beh_texts), report.out(),
                        profiles_out.empty() ? nullptr : profiles.out()));
      if (!profiles_out.empty()) emit(profiles_out, profiles.str());
      emit(common.output, report.str());
    } else if (*gen) {
      std::string config_text = params.empty() ? std::string() : read_file(params);
      std::vector<std::string> keys, values;
      for (const auto& s : settings) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) {
          std::cerr << "folkscope: --set expects key=value, got '" << s << "'\n\n" << gen->help();
          return 2;
        }
        keys.push_back(s.substr(0, eq));
        values.push_back(s.substr(eq + 1));
      }
      if (!regime.empty()) {
        keys.emplace_back("regime");
        values.push_back(regime);
      }
      // An explicit --seed overrides any seed in the parameters.
      if (app.count("--seed") > 0) {
        keys.emplace_back("seed");
        values.push_back(std::to_string(common.seed));
      }
      std::vector<const char*> kp, vp;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        kp.push_back(keys[i].c_str());
        vp.push_back(values[i].c_str());
      }
      Text bookmarks, cats, resolved;
      check(fs_generate(params.empty() ? nullptr : config_text.c_str(), kp.data(), vp.data(), kp.size(),
                        bookmarks.out(), categories_out.empty() ? nullptr : cats.out(),
                        resolved_out.empty() ? nullptr : resolved.out()));
      if (!categories_out.empty()) emit(categories_out, cats.str());
      if (!resolved_out.empty()) emit(resolved_out, resolved.str());
      emit(common.output, bookmarks.str());
    } else if (*sweep) {
      FolksonomyHandle f;
      load(sweep_corpus, f);
      fs_experiment_options o;
      fs_experiment_options_init(&o);
      o.train = train_options(sweep_train, common.seed, o.train.min_category_resources);
      o.sizes = sizes.data();
      o.size_count = sizes.size();
      o.runs = runs;
      o.committee = opt(members);
      o.min_users = min_users;
      o.topk = topk.data();
      o.topk_count = topk.size();
      Text report;
      check(fs_experiment(f.p, sweep_train.categories.c_str(), opt(sweep_train.texts), &o, report.out()));
      emit(common.output, report.str());
    }
  } catch (const RuntimeFailure& e) {
    std::cerr << "folkscope: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
