#ifndef TSGN_TSGN_H
#define TSGN_TSGN_H

#include <stddef.h>
#include <stdint.h>

#if defined(TSGN_BUILDING)
#define TSGN_API __attribute__((visibility("default")))
#else
#define TSGN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status. On failure a message describing the
   most recent error of the calling thread is available from
   tsgn_last_error() until the next failing call on that thread. */
typedef enum {
  TSGN_OK = 0,
  TSGN_INVALID_ARGUMENT = 1,
  TSGN_IO = 2,
  TSGN_FORMAT = 3,
  TSGN_INCOMPATIBLE = 4,
  TSGN_NOT_FOUND = 5,
  TSGN_INTERNAL = 6
} tsgn_status;

typedef enum {
  TSGN_VARIANT_PLAIN = 0,
  TSGN_VARIANT_DIRECTED = 1,
  TSGN_VARIANT_TEMPORAL = 2,
  TSGN_VARIANT_MULTIPLE = 3
} tsgn_variant;

typedef enum { TSGN_FORM_STAR = 0, TSGN_FORM_NET = 1 } tsgn_form;

typedef enum { TSGN_TIER_PLAIN = 0, TSGN_TIER_DIRECTED = 1, TSGN_TIER_MULTIEDGE = 2 } tsgn_tier;

typedef struct tsgn_dataset tsgn_dataset;
typedef struct tsgn_mapped tsgn_mapped;
typedef struct tsgn_report tsgn_report;

enum { TSGN_FEATURE_COUNT = 10 };

TSGN_API const char* tsgn_last_error(void);
TSGN_API const char* tsgn_status_name(tsgn_status status);

/* Name lookups: "tsgn", "dtsgn", "ttsgn", "mtsgn"; "star", "net";
   "plain", "directed", "multiedge". */
TSGN_API tsgn_status tsgn_parse_variant(const char* name, tsgn_variant* out);
TSGN_API tsgn_status tsgn_parse_form(const char* name, tsgn_form* out);
TSGN_API tsgn_status tsgn_parse_tier(const char* name, tsgn_tier* out);
TSGN_API const char* tsgn_variant_name(tsgn_variant variant);

TSGN_API double tsgn_map_weight(double a, double b);

/* Names of the ten handcrafted features, 0 <= index < TSGN_FEATURE_COUNT. */
TSGN_API const char* tsgn_feature_name(size_t index);

/* ---- datasets ---- */

TSGN_API tsgn_status tsgn_dataset_synthesize(const char* profile, size_t n_per_class,
                                             uint64_t seed, tsgn_dataset** out);
TSGN_API tsgn_status tsgn_dataset_load(const char* dir, tsgn_dataset** out);
TSGN_API tsgn_status tsgn_dataset_save(const tsgn_dataset* dataset, const char* dir);
/* Rebuilds every graph at the given form and tier into a new handle. */
TSGN_API tsgn_status tsgn_dataset_reextract(const tsgn_dataset* dataset, tsgn_form form,
                                            tsgn_tier tier, tsgn_dataset** out);
TSGN_API void tsgn_dataset_free(tsgn_dataset* dataset);

TSGN_API size_t tsgn_dataset_size(const tsgn_dataset* dataset);
/* Borrowed strings, valid while the handle lives. NULL when out of range. */
TSGN_API const char* tsgn_dataset_name(const tsgn_dataset* dataset);
TSGN_API const char* tsgn_dataset_graph_id(const tsgn_dataset* dataset, size_t index);
TSGN_API const char* tsgn_dataset_graph_label(const tsgn_dataset* dataset, size_t index);
TSGN_API tsgn_status tsgn_dataset_graph_counts(const tsgn_dataset* dataset, size_t index,
                                               size_t* nodes, size_t* edges);
/* Ten handcrafted features of graph `index` written to `out`. */
TSGN_API tsgn_status tsgn_dataset_graph_features(const tsgn_dataset* dataset, size_t index,
                                                 double* out);

/* Fails with TSGN_INCOMPATIBLE when the dataset lacks an attribute the
   variant needs. */
TSGN_API tsgn_status tsgn_dataset_check_variant(const tsgn_dataset* dataset,
                                                tsgn_variant variant);

/* Dataset statistics table as a newly allocated string; release it with
   tsgn_string_free. */
TSGN_API tsgn_status tsgn_dataset_stats_table(const tsgn_dataset* dataset, char** out);
TSGN_API void tsgn_string_free(char* s);

/* Feature CSV for the whole dataset. `variant` NULL computes features on
   the original graphs. `threads` 0 means 1. */
TSGN_API tsgn_status tsgn_dataset_write_features(const tsgn_dataset* dataset,
                                                 const tsgn_variant* variant, unsigned threads,
                                                 const char* path);

/* ---- mapped graphs ---- */

/* Maps graph `index` with `variant`. */
TSGN_API tsgn_status tsgn_map(const tsgn_dataset* dataset, size_t index, tsgn_variant variant,
                              tsgn_mapped** out);
TSGN_API void tsgn_mapped_free(tsgn_mapped* mapped);
TSGN_API size_t tsgn_mapped_node_count(const tsgn_mapped* mapped);
TSGN_API size_t tsgn_mapped_edge_count(const tsgn_mapped* mapped);
/* Endpoints and weight of edge `index`; edges are sorted by (from, to). */
TSGN_API tsgn_status tsgn_mapped_edge(const tsgn_mapped* mapped, size_t index, uint32_t* from,
                                      uint32_t* to, double* weight);
/* Source transaction id of mapped node `index`. */
TSGN_API tsgn_status tsgn_mapped_node_edge_id(const tsgn_mapped* mapped, size_t index,
                                              uint32_t* edge_id);
TSGN_API tsgn_status tsgn_mapped_features(const tsgn_mapped* mapped, double* out);
/* Writes a `# variant=... directed=... nodes=... edges=...` line followed by
   `from,to,weight` rows. */
TSGN_API tsgn_status tsgn_mapped_write(const tsgn_mapped* mapped, const char* path);

/* ---- evaluation ---- */

typedef struct {
  size_t n_repeats;
  double train_fraction;
  uint64_t seed;
  size_t n_trees;
  size_t max_depth;        /* 0 = unlimited */
  size_t min_samples_leaf;
  unsigned threads;        /* 0 means 1 */
  const char* positive_label;
} tsgn_eval_options;

TSGN_API void tsgn_eval_options_init(tsgn_eval_options* options);

/* TN row plus one fused row per variant. */
TSGN_API tsgn_status tsgn_evaluate(const tsgn_dataset* dataset, const tsgn_variant* variants,
                                   size_t n_variants, const tsgn_eval_options* options,
                                   tsgn_report** out);
TSGN_API void tsgn_report_free(tsgn_report* report);
TSGN_API size_t tsgn_report_size(const tsgn_report* report);
/* `has_increase` is 0 for the TN row. Borrowed name. */
TSGN_API tsgn_status tsgn_report_row(const tsgn_report* report, size_t index, const char** name,
                                     double* mean_f1, double* std_f1, int* has_increase,
                                     double* percent_increase);
TSGN_API tsgn_status tsgn_report_write_text(const tsgn_report* report, const char* path);
TSGN_API tsgn_status tsgn_report_write_csv(const tsgn_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif
