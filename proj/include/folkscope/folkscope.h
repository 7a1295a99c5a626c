#ifndef FOLKSCOPE_H
#define FOLKSCOPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define FS_API __declspec(dllexport)
#else
#  define FS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
  FS_OK = 0,
  FS_ERR_INVALID_ARGUMENT = 1,
  FS_ERR_PARSE = 2,
  FS_ERR_IO = 3,
  FS_ERR_DEGENERATE = 4,
  FS_ERR_INTERNAL = 5
} fs_status;

typedef struct fs_folksonomy fs_folksonomy;
typedef struct fs_model fs_model;

FS_API const char* fs_version(void);
/* Message of the last failing call on this thread; "" when none. */
FS_API const char* fs_last_error(void);
/* Releases strings returned through char** out-parameters. */
FS_API void fs_string_free(char* s);

/* ---- folksonomy ---- */

/* strip_reading_state != 0 removes read / currently-reading / to-read. */
FS_API fs_status fs_folksonomy_load(const char* path, int strip_reading_state, fs_folksonomy** out);
FS_API fs_status fs_folksonomy_parse(const char* text, size_t length, int strip_reading_state,
                                     fs_folksonomy** out);
FS_API void fs_folksonomy_free(fs_folksonomy* f);
/* Annotated entity counts. */
FS_API fs_status fs_folksonomy_counts(const fs_folksonomy* f, size_t* resources, size_t* users,
                                      size_t* bookmarks);
FS_API fs_status fs_tag_frequency(const fs_folksonomy* f, const char* tag, size_t* resources,
                                  size_t* users, size_t* bookmarks);
FS_API fs_status fs_write_bookmarks(const fs_folksonomy* f, char** out);
FS_API fs_status fs_ingest_report(const fs_folksonomy* f, const char* source, char** json);

typedef struct fs_stats_options {
  size_t novelty_max_rank;
  int allow_synthetic_order;
  int include_novelty;
  size_t popular_min_users; /* 0 skips the popularity section */
  const char* novelty_resource; /* NULL or "" for none */
} fs_stats_options;

FS_API void fs_stats_options_init(fs_stats_options* opts);
FS_API fs_status fs_statistics_report(const fs_folksonomy* f, const fs_stats_options* opts, char** json);

/* ---- representations and weightings ---- */

/* source: a representation name (weighted-fta, ranks-topk, ...), tf,
 * tf-irf, tf-iuf, tf-ibf, or text (needs texts_path). Emits vector lines
 * and, when vocabulary is non-NULL, `id<TAB>token<TAB>df` lines. */
FS_API fs_status fs_vectors(const fs_folksonomy* f, const char* source, size_t k, double min_df_fraction,
                            const char* texts_path, char** vectors, char** vocabulary);
/* kind: irf | iuf | ibf | none */
FS_API fs_status fs_inverse_frequency(const fs_folksonomy* f, const char* tag, const char* kind, double* out);
FS_API fs_status fs_correlation_report(const fs_folksonomy* f, char** json);
FS_API fs_status fs_pearson(const double* xs, const double* ys, size_t n, double* out);
FS_API fs_status fs_spearman(const double* xs, const double* ys, size_t n, double* out);

/* ---- classification ---- */

typedef struct fs_train_options {
  const char* source;  /* feature source name, see fs_vectors */
  size_t k;            /* top-k size for *-topk sources */
  const char* scheme;  /* native | one-vs-all | one-vs-one */
  double penalty;
  size_t epochs;
  uint64_t seed;
  int self_train;
  int squared_hinge;
  const char* level;   /* top | second */
  double test_fraction;
  size_t min_category_resources;
  double min_df_fraction;
} fs_train_options;

FS_API void fs_train_options_init(fs_train_options* opts);
FS_API fs_status fs_model_train(const fs_folksonomy* f, const char* categories_path, const char* texts_path,
                                const fs_train_options* opts, fs_model** out);
FS_API fs_status fs_model_save(const fs_model* m, const char* path);
FS_API fs_status fs_model_load(const char* path, fs_model** out);
FS_API fs_status fs_model_to_json(const fs_model* m, char** json);
FS_API void fs_model_free(fs_model* m);
/* all != 0 scores every labeled resource instead of the test partition.
 * margins (optional) receives the margin-file lines. */
FS_API fs_status fs_model_evaluate(const fs_model* m, const fs_folksonomy* f, const char* categories_path,
                                   const char* texts_path, int all, char** json, char** margins);

/* Sums at least two margin files. truth_path (optional) is a categories
 * file scored at truth_level. */
FS_API fs_status fs_committee(const char* const* margin_paths, size_t count, int normalize,
                              const char* truth_path, const char* truth_level, char** json);

/* ---- tagging behavior ---- */

/* measure: tpp | trr | orphan. texts_path (optional) adds tag
 * descriptiveness per split. profiles (optional) receives TSV rows. */
FS_API fs_status fs_behavior(const fs_folksonomy* f, const char* measure, const double* percents, size_t count,
                             const char* texts_path, char** json, char** profiles);

/* ---- synthetic corpora ---- */

/* config_text: flat key=value lines (may be NULL). keys/values override
 * it, applied in order. categories and resolved_config are optional. */
FS_API fs_status fs_generate(const char* config_text, const char* const* keys, const char* const* values,
                             size_t count, char** bookmarks, char** categories, char** resolved_config);

/* ---- experiments ---- */

typedef struct fs_experiment_options {
  fs_train_options train;  /* train.seed is the base seed for run subsets */
  const size_t* sizes;
  size_t size_count;
  size_t runs;
  const char* committee;  /* comma-separated extra sources, or NULL */
  size_t min_users;
  const size_t* topk;     /* non-empty: run the top-k sweep instead */
  size_t topk_count;
} fs_experiment_options;

FS_API void fs_experiment_options_init(fs_experiment_options* opts);
FS_API fs_status fs_experiment(const fs_folksonomy* f, const char* categories_path, const char* texts_path,
                               const fs_experiment_options* opts, char** json);

#ifdef __cplusplus
}
#endif

#endif
