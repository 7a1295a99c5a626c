#include "folkscope/folkscope.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "folkscope/error.hpp"
#include "folkscope/generator.hpp"
#include "folkscope/harness.hpp"

struct fs_folksonomy {
  folkscope::Folksonomy value;
};

struct fs_model {
  folkscope::ModelBundle value;
};

namespace {

using namespace folkscope;

thread_local std::string last_error;

fs_status fail(fs_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
fs_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FS_OK;
  } catch (const ParseError& e) {
    return fail(FS_ERR_PARSE, e.what());
  } catch (const IoError& e) {
    return fail(FS_ERR_IO, e.what());
  } catch (const DegenerateInput& e) {
    return fail(FS_ERR_DEGENERATE, e.what());
  } catch (const InvalidArgument& e) {
    return fail(FS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FS_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (!p) throw InvalidArgument(std::string(name) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Writes to an optional out-parameter.
void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

std::string str_or(const char* s, const char* fallback) { return s && *s ? s : fallback; }

std::unique_ptr<ResourceTexts> load_texts(const char* path) {
  if (!path || !*path) return nullptr;
  return std::make_unique<ResourceTexts>(read_texts_file(path));
}

CategoryLevel parse_level(const char* s) {
  std::string v = str_or(s, "top");
  if (v == "top") return CategoryLevel::top;
  if (v == "second") return CategoryLevel::second;
  throw InvalidArgument("unknown category level '" + v + "' (expected top or second)");
}

TrainConfig train_config(const fs_train_options& o) {
  TrainConfig c;
  c.scheme = parse_scheme(str_or(o.scheme, "native"));
  c.penalty = o.penalty;
  c.epochs = o.epochs;
  c.seed = o.seed;
  c.mode = o.self_train ? LearningMode::self_training : LearningMode::supervised;
  c.squared_hinge = o.squared_hinge != 0;
  return c;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Folksonomy ingest(std::vector<Bookmark> records, int strip) {
  if (strip) records = strip_reading_state(std::move(records), default_reading_state_tags());
  return Folksonomy::ingest(std::move(records));
}

}  // namespace

extern "C" {

const char* fs_version(void) { return kToolVersion.data(); }

const char* fs_last_error(void) { return last_error.c_str(); }

void fs_string_free(char* s) { std::free(s); }

fs_status fs_folksonomy_load(const char* path, int strip_reading_state, fs_folksonomy** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new fs_folksonomy{ingest(read_bookmarks_file(path), strip_reading_state)};
  });
}

fs_status fs_folksonomy_parse(const char* text, size_t length, int strip_reading_state, fs_folksonomy** out) {
  return guarded([&] {
    require(out, "out");
    if (!text && length) throw InvalidArgument("text must not be null");
    std::istringstream in(std::string(text ? text : "", length));
    *out = new fs_folksonomy{ingest(read_bookmarks(in), strip_reading_state)};
  });
}

void fs_folksonomy_free(fs_folksonomy* f) { delete f; }

fs_status fs_folksonomy_counts(const fs_folksonomy* f, size_t* resources, size_t* users, size_t* bookmarks) {
  return guarded([&] {
    require(f, "folksonomy");
    if (resources) *resources = f->value.resource_count();
    if (users) *users = f->value.user_count();
    if (bookmarks) *bookmarks = f->value.bookmark_count();
  });
}

fs_status fs_tag_frequency(const fs_folksonomy* f, const char* tag, size_t* resources, size_t* users,
                           size_t* bookmarks) {
  return guarded([&] {
    require(f, "folksonomy");
    require(tag, "tag");
    const auto& tf = f->value.frequency(tag);
    if (resources) *resources = tf.resources;
    if (users) *users = tf.users;
    if (bookmarks) *bookmarks = tf.bookmarks;
  });
}

fs_status fs_write_bookmarks(const fs_folksonomy* f, char** out) {
  return guarded([&] {
    require(f, "folksonomy");
    require(out, "out");
    std::ostringstream s;
    write_bookmarks(s, f->value.bookmarks());
    *out = dup(s.str());
  });
}

fs_status fs_ingest_report(const fs_folksonomy* f, const char* source, char** json) {
  return guarded([&] {
    require(f, "folksonomy");
    require(json, "json");
    *json = dup(ingest_report_json(f->value.report(), str_or(source, "-")));
  });
}

void fs_stats_options_init(fs_stats_options* opts) {
  if (!opts) return;
  StatsOptions d;
  opts->novelty_max_rank = d.novelty_max_rank;
  opts->allow_synthetic_order = d.allow_synthetic_order;
  opts->include_novelty = d.include_novelty;
  opts->popular_min_users = d.popular_min_users;
  opts->novelty_resource = nullptr;
}

fs_status fs_statistics_report(const fs_folksonomy* f, const fs_stats_options* opts, char** json) {
  return guarded([&] {
    require(f, "folksonomy");
    require(json, "json");
    StatsOptions o;
    if (opts) {
      o.novelty_max_rank = opts->novelty_max_rank;
      o.allow_synthetic_order = opts->allow_synthetic_order != 0;
      o.include_novelty = opts->include_novelty != 0;
      o.popular_min_users = opts->popular_min_users;
      o.novelty_resource = str_or(opts->novelty_resource, "");
    }
    *json = dup(statistics_report_json(f->value, o));
  });
}

fs_status fs_vectors(const fs_folksonomy* f, const char* source, size_t k, double min_df_fraction,
                     const char* texts_path, char** vectors, char** vocabulary) {
  return guarded([&] {
    require(f, "folksonomy");
    require(source, "source");
    require(vectors, "vectors");
    auto src = parse_feature_source(source, k);
    auto texts = load_texts(texts_path);
    std::vector<std::string> ids;
    if (src.kind == FeatureSource::Kind::text) {
      if (!texts) throw InvalidArgument("the text source needs a texts file");
      for (const auto& [id, text] : *texts) ids.push_back(id);
    } else {
      for (const auto& [id, entry] : f->value.resources()) {
        if (entry.annotators > 0) ids.push_back(id);
      }
    }
    Vocabulary vocab;
    if (src.kind == FeatureSource::Kind::text) {
      std::vector<std::vector<std::string>> docs;
      for (const auto& id : ids) docs.push_back(text_tokens(texts->find(id)->second, src.text));
      vocab = Vocabulary::build(docs, min_df_fraction);
    } else {
      vocab = build_tag_vocabulary(f->value, ids, min_df_fraction);
    }
    std::vector<std::pair<std::string, FeatureVector>> rows;
    for (const auto& id : ids) {
      FeatureVector v;
      switch (src.kind) {
        case FeatureSource::Kind::representation: v = represent_resource(f->value, id, src.scheme, vocab); break;
        case FeatureSource::Kind::weighting: v = weight_resource(f->value, id, src.weighting, vocab); break;
        case FeatureSource::Kind::text: v = represent_text(texts->find(id)->second, vocab, src.text); break;
      }
      rows.emplace_back(id, std::move(v));
    }
    std::ostringstream s;
    write_vectors(s, rows);
    std::string body = s.str();
    if (vocabulary) {
      std::ostringstream v;
      for (FeatureId i = 0; i < vocab.size(); ++i) {
        v << i << '\t' << vocab.token(i) << '\t' << vocab.document_frequency(i) << '\n';
      }
      *vocabulary = dup(v.str());
    }
    *vectors = dup(body);
  });
}

fs_status fs_inverse_frequency(const fs_folksonomy* f, const char* tag, const char* kind, double* out) {
  return guarded([&] {
    require(f, "folksonomy");
    require(tag, "tag");
    require(kind, "kind");
    require(out, "out");
    *out = inverse_frequency(tag, f->value, parse_inverse_frequency(kind));
  });
}

fs_status fs_correlation_report(const fs_folksonomy* f, char** json) {
  return guarded([&] {
    require(f, "folksonomy");
    require(json, "json");
    *json = dup(correlation_report_json(f->value));
  });
}

fs_status fs_pearson(const double* xs, const double* ys, size_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    if (n && (!xs || !ys)) throw InvalidArgument("sequences must not be null");
    *out = pearson({xs, n}, {ys, n});
  });
}

fs_status fs_spearman(const double* xs, const double* ys, size_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    if (n && (!xs || !ys)) throw InvalidArgument("sequences must not be null");
    *out = spearman({xs, n}, {ys, n});
  });
}

void fs_train_options_init(fs_train_options* opts) {
  if (!opts) return;
  TrainConfig t;
  BundleSpec b;
  opts->source = "weighted-fta";
  opts->k = 10;
  opts->scheme = "native";
  opts->penalty = t.penalty;
  opts->epochs = t.epochs;
  opts->seed = t.seed;
  opts->self_train = 0;
  opts->squared_hinge = 0;
  opts->level = "top";
  opts->test_fraction = b.test_fraction;
  opts->min_category_resources = b.min_category_resources;
  opts->min_df_fraction = b.min_df_fraction;
}

fs_status fs_model_train(const fs_folksonomy* f, const char* categories_path, const char* texts_path,
                         const fs_train_options* opts, fs_model** out) {
  return guarded([&] {
    require(f, "folksonomy");
    require(categories_path, "categories_path");
    require(opts, "options");
    require(out, "out");
    BundleSpec spec;
    spec.source = parse_feature_source(str_or(opts->source, "weighted-fta"), opts->k);
    spec.train = train_config(*opts);
    spec.level = parse_level(opts->level);
    spec.test_fraction = opts->test_fraction;
    spec.min_category_resources = opts->min_category_resources;
    spec.min_df_fraction = opts->min_df_fraction;
    auto labels = read_categories_file(categories_path);
    auto texts = load_texts(texts_path);
    *out = new fs_model{train_bundle(spec, f->value, labels, texts.get())};
  });
}

fs_status fs_model_save(const fs_model* m, const char* path) {
  return guarded([&] {
    require(m, "model");
    require(path, "path");
    std::ofstream o(path, std::ios::binary);
    if (!o) throw IoError(std::string("cannot write '") + path + "'");
    o << serialize_bundle(m->value) << '\n';
    if (!o) throw IoError(std::string("write failed for '") + path + "'");
  });
}

fs_status fs_model_load(const char* path, fs_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open '") + path + "'");
    std::stringstream s;
    s << in.rdbuf();
    *out = new fs_model{deserialize_bundle(s.str())};
  });
}

fs_status fs_model_to_json(const fs_model* m, char** json) {
  return guarded([&] {
    require(m, "model");
    require(json, "json");
    *json = dup(serialize_bundle(m->value));
  });
}

void fs_model_free(fs_model* m) { delete m; }

fs_status fs_model_evaluate(const fs_model* m, const fs_folksonomy* f, const char* categories_path,
                            const char* texts_path, int all, char** json, char** margins) {
  return guarded([&] {
    require(m, "model");
    require(f, "folksonomy");
    require(categories_path, "categories_path");
    require(json, "json");
    auto labels = read_categories_file(categories_path);
    auto texts = load_texts(texts_path);
    auto ev = evaluate_bundle(m->value, f->value, labels, all != 0, texts.get());
    if (margins) {
      std::ostringstream s;
      write_margins(s, ev.margins);
      *margins = dup(s.str());
    }
    *json = dup(evaluation_report_json(m->value, ev, all != 0));
  });
}

fs_status fs_committee(const char* const* margin_paths, size_t count, int normalize, const char* truth_path,
                       const char* truth_level, char** json) {
  return guarded([&] {
    require(json, "json");
    if (count < 2) throw InvalidArgument("a committee needs at least two margin files");
    require(margin_paths, "margin_paths");
    CommitteeOutcome o;
    std::vector<MarginTable> tables;
    for (size_t i = 0; i < count; ++i) {
      require(margin_paths[i], "margin path");
      o.sources.emplace_back(margin_paths[i]);
      tables.push_back(read_margins_file(margin_paths[i]));
    }
    o.normalized = normalize != 0;
    o.sums = combine(tables, o.normalized, &o.normalization);
    o.predictions = predict_committee(o.sums);
    if (truth_path && *truth_path) {
      const auto level = parse_level(truth_level);
      std::map<std::string, std::string> truth;
      for (const auto& a : read_categories_file(truth_path)) {
        if (auto l = category_label(a, level)) truth.emplace(a.resource, *l);
      }
      std::size_t scored = 0, correct = 0;
      for (std::size_t j = 0; j < o.sums.instances.size(); ++j) {
        auto it = truth.find(o.sums.instances[j]);
        if (it == truth.end()) continue;
        ++scored;
        if (it->second == o.sums.categories[o.predictions[j]]) ++correct;
      }
      if (scored == 0) throw InvalidArgument("no committee instance has a truth label");
      o.accuracy = static_cast<double>(correct) / static_cast<double>(scored);
    }
    *json = dup(committee_report_json(o));
  });
}

fs_status fs_behavior(const fs_folksonomy* f, const char* measure, const double* percents, size_t count,
                      const char* texts_path, char** json, char** profiles) {
  return guarded([&] {
    require(f, "folksonomy");
    require(json, "json");
    if (count && !percents) throw InvalidArgument("percents must not be null");
    BehaviorOutcome o;
    o.measure = parse_measure(str_or(measure, "tpp"));
    o.ranked = rank_users(user_profiles(f->value), o.measure);
    auto texts = load_texts(texts_path);
    TextPipelineConfig pipeline;
    pipeline.stem = false;
    pipeline.stopwords = english_stopwords();
    for (size_t i = 0; i < count; ++i) {
      o.splits.push_back(split_by_assignments(o.ranked, o.measure, percents[i]));
      if (texts) {
        const auto& s = o.splits.back();
        std::set<std::string> cat(s.categorizers.begin(), s.categorizers.end());
        std::set<std::string> des(s.describers.begin(), s.describers.end());
        o.descriptiveness.emplace_back(tag_descriptiveness(f->value, *texts, &cat, pipeline),
                                       tag_descriptiveness(f->value, *texts, &des, pipeline));
      }
    }
    put(profiles, format_profiles(o.ranked));
    *json = dup(behavior_report_json(o));
  });
}

fs_status fs_generate(const char* config_text, const char* const* keys, const char* const* values, size_t count,
                      char** bookmarks, char** categories, char** resolved_config) {
  return guarded([&] {
    require(bookmarks, "bookmarks");
    RegimeConfig cfg;
    if (config_text) {
      std::istringstream in(config_text);
      cfg = parse_regime_config(in);
    }
    for (size_t i = 0; i < count; ++i) {
      if (!keys || !keys[i]) throw InvalidArgument("key must not be null");
      if (!values || !values[i]) throw InvalidArgument("value must not be null");
      apply_regime_setting(cfg, keys[i], values[i]);
    }
    cfg.validate();
    auto corpus = generate(cfg);
    std::ostringstream b;
    write_bookmarks(b, corpus.bookmarks);
    if (categories) {
      std::ostringstream c;
      for (const auto& a : corpus.categories) {
        c << a.resource << '\t' << a.top;
        if (a.second) c << '\t' << *a.second;
        c << '\n';
      }
      *categories = dup(c.str());
    }
    put(resolved_config, format_regime_config(cfg));
    *bookmarks = dup(b.str());
  });
}

void fs_experiment_options_init(fs_experiment_options* opts) {
  if (!opts) return;
  fs_train_options_init(&opts->train);
  ExperimentSpec d;
  opts->train.test_fraction = d.test_fraction;
  opts->train.min_category_resources = d.min_category_resources;
  opts->sizes = nullptr;
  opts->size_count = 0;
  opts->runs = d.runs;
  opts->committee = nullptr;
  opts->min_users = d.min_users;
  opts->topk = nullptr;
  opts->topk_count = 0;
}

fs_status fs_experiment(const fs_folksonomy* f, const char* categories_path, const char* texts_path,
                        const fs_experiment_options* opts, char** json) {
  return guarded([&] {
    require(f, "folksonomy");
    require(categories_path, "categories_path");
    require(opts, "options");
    require(json, "json");
    if (opts->size_count && !opts->sizes) throw InvalidArgument("sizes must not be null");
    if (opts->topk_count && !opts->topk) throw InvalidArgument("topk must not be null");
    const auto& t = opts->train;
    ExperimentSpec spec;
    spec.source = parse_feature_source(str_or(t.source, "weighted-fta"), t.k);
    for (const auto& name : split_list(str_or(opts->committee, ""))) {
      spec.committee.push_back(parse_feature_source(name, t.k));
    }
    spec.train = train_config(t);
    spec.sizes.assign(opts->sizes, opts->sizes + opts->size_count);
    spec.runs = opts->runs;
    spec.base_seed = t.seed;
    spec.level = parse_level(t.level);
    spec.test_fraction = t.test_fraction;
    spec.min_category_resources = t.min_category_resources;
    spec.min_users = opts->min_users;
    spec.min_df_fraction = t.min_df_fraction;
    auto labels = read_categories_file(categories_path);
    auto texts = load_texts(texts_path);
    if (opts->topk_count) {
      std::vector<std::size_t> ks(opts->topk, opts->topk + opts->topk_count);
      *json = dup(topk_report_json(run_topk_sweep(spec, ks, f->value, labels)));
    } else {
      *json = dup(experiment_report_json(run_experiment(spec, f->value, labels, texts.get())));
    }
  });
}

}  // extern "C"
