/* Exercises the C interface from C. Prints one line per failed check. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "tsgn/tsgn.h"

static int failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: check failed: %s (%s)\n", __FILE__, \
              __LINE__, #cond, tsgn_last_error());               \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void names_and_weights(void) {
  tsgn_variant v;
  tsgn_form f;
  tsgn_tier t;
  CHECK(tsgn_parse_variant("ttsgn", &v) == TSGN_OK && v == TSGN_VARIANT_TEMPORAL);
  CHECK(tsgn_parse_variant("bogus", &v) == TSGN_INVALID_ARGUMENT);
  CHECK(strlen(tsgn_last_error()) > 0);
  CHECK(tsgn_parse_form("star", &f) == TSGN_OK && f == TSGN_FORM_STAR);
  CHECK(tsgn_parse_tier("directed", &t) == TSGN_OK && t == TSGN_TIER_DIRECTED);
  CHECK(strcmp(tsgn_variant_name(TSGN_VARIANT_MULTIPLE), "mtsgn") == 0);
  CHECK(tsgn_map_weight(0.0, 0.0) == 0.0);
  CHECK(fabs(tsgn_map_weight(2.0 * exp(1.0), 0.0) - 1.0) < 1e-12);
  CHECK(strcmp(tsgn_feature_name(0), "node_count") == 0);
  CHECK(tsgn_feature_name(TSGN_FEATURE_COUNT) == NULL);
  CHECK(strcmp(tsgn_status_name(TSGN_INCOMPATIBLE), "incompatible") == 0);
}

static void datasets_and_mappings(void) {
  tsgn_dataset* d = NULL;
  CHECK(tsgn_dataset_synthesize("EtherG1", 5, 3, &d) == TSGN_OK);
  if (!d) return;
  CHECK(tsgn_dataset_size(d) == 10);
  CHECK(strcmp(tsgn_dataset_graph_id(d, 0), "g00000") == 0);
  CHECK(tsgn_dataset_graph_id(d, 10) == NULL);
  CHECK(strcmp(tsgn_dataset_graph_label(d, 0), "phishing") == 0);
  CHECK(strcmp(tsgn_dataset_graph_label(d, 1), "benign") == 0);

  size_t nodes = 0, edges = 0;
  CHECK(tsgn_dataset_graph_counts(d, 0, &nodes, &edges) == TSGN_OK);
  double f[TSGN_FEATURE_COUNT];
  CHECK(tsgn_dataset_graph_features(d, 0, f) == TSGN_OK);
  CHECK(f[0] == (double)nodes && f[1] <= (double)edges);
  CHECK(tsgn_dataset_graph_counts(d, 99, &nodes, &edges) == TSGN_INVALID_ARGUMENT);

  tsgn_mapped* m = NULL;
  CHECK(tsgn_map(d, 1, TSGN_VARIANT_MULTIPLE, &m) == TSGN_OK);
  if (m) {
    CHECK(tsgn_mapped_node_count(m) > 0);
    for (size_t i = 0; i < tsgn_mapped_edge_count(m); ++i) {
      uint32_t from, to;
      double w;
      CHECK(tsgn_mapped_edge(m, i, &from, &to, &w) == TSGN_OK);
      CHECK(from < tsgn_mapped_node_count(m) && to < tsgn_mapped_node_count(m));
    }
    CHECK(tsgn_mapped_edge(m, tsgn_mapped_edge_count(m), NULL, NULL, NULL) == TSGN_INVALID_ARGUMENT);
    uint32_t id;
    CHECK(tsgn_mapped_node_edge_id(m, 0, &id) == TSGN_OK);
    CHECK(tsgn_mapped_features(m, f) == TSGN_OK);
    CHECK(f[0] == (double)tsgn_mapped_node_count(m));
    tsgn_mapped_free(m);
  }

  tsgn_dataset* plain = NULL;
  CHECK(tsgn_dataset_reextract(d, TSGN_FORM_NET, TSGN_TIER_PLAIN, &plain) == TSGN_OK);
  if (plain) {
    CHECK(tsgn_dataset_check_variant(plain, TSGN_VARIANT_PLAIN) == TSGN_OK);
    CHECK(tsgn_dataset_check_variant(plain, TSGN_VARIANT_TEMPORAL) == TSGN_INCOMPATIBLE);
    CHECK(strstr(tsgn_last_error(), "temporal attribute required") != NULL);
    m = NULL;
    CHECK(tsgn_map(plain, 0, TSGN_VARIANT_DIRECTED, &m) == TSGN_INCOMPATIBLE);
    CHECK(m == NULL);
    tsgn_dataset_free(plain);
  }
  CHECK(tsgn_dataset_reextract(d, TSGN_FORM_NET, (tsgn_tier)7, &plain) == TSGN_INVALID_ARGUMENT);

  char* table = NULL;
  CHECK(tsgn_dataset_stats_table(d, &table) == TSGN_OK);
  CHECK(table != NULL && strncmp(table, "Dataset", 7) == 0);
  tsgn_string_free(table);

  tsgn_dataset_free(d);
}

static void loading_errors(void) {
  tsgn_dataset* d = NULL;
  CHECK(tsgn_dataset_load("/nonexistent/dataset", &d) != TSGN_OK);
  CHECK(d == NULL);
  CHECK(tsgn_dataset_synthesize("EtherG9", 1, 1, &d) == TSGN_INVALID_ARGUMENT);
  CHECK(tsgn_dataset_size(NULL) == 0);
  tsgn_dataset_free(NULL);
}

static void evaluation(void) {
  tsgn_dataset* d = NULL;
  CHECK(tsgn_dataset_synthesize("EtherG1", 15, 4, &d) == TSGN_OK);
  if (!d) return;
  tsgn_eval_options options;
  tsgn_eval_options_init(&options);
  CHECK(options.n_repeats == 300 && options.n_trees == 100);
  options.n_repeats = 3;
  options.n_trees = 10;
  const tsgn_variant variants[] = {TSGN_VARIANT_TEMPORAL};
  tsgn_report* r = NULL;
  CHECK(tsgn_evaluate(d, variants, 1, &options, &r) == TSGN_OK);
  if (r) {
    CHECK(tsgn_report_size(r) == 2);
    const char* name = NULL;
    double mean, sd, inc;
    int has;
    CHECK(tsgn_report_row(r, 0, &name, &mean, &sd, &has, &inc) == TSGN_OK);
    CHECK(strcmp(name, "tn") == 0 && has == 0 && mean >= 0.0 && mean <= 1.0);
    CHECK(tsgn_report_row(r, 1, &name, &mean, &sd, &has, &inc) == TSGN_OK);
    CHECK(strcmp(name, "tn+ttsgn") == 0 && has == 1);
    CHECK(tsgn_report_row(r, 2, &name, NULL, NULL, NULL, NULL) == TSGN_INVALID_ARGUMENT);
    CHECK(tsgn_report_write_csv(r, "/nonexistent/dir/report.csv") == TSGN_IO);
    tsgn_report_free(r);
  }
  options.positive_label = "absent";
  r = NULL;
  CHECK(tsgn_evaluate(d, NULL, 0, &options, &r) == TSGN_NOT_FOUND);
  tsgn_dataset_free(d);
}

int main(void) {
  names_and_weights();
  datasets_and_mappings();
  loading_errors();
  evaluation();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C interface checks passed\n");
  return 0;
}
