#include "tsgn/tsgn.h"

#include <fstream>
#include <new>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tsgn/error.hpp"
#include "tsgn/evaluate.hpp"
#include "tsgn/features.hpp"
#include "tsgn/ingest.hpp"
#include "tsgn/pipeline.hpp"
#include "tsgn/synthetic.hpp"
#include "tsgn/transforms.hpp"

struct tsgn_dataset {
  tsgn::DatasetManifest manifest;
  std::vector<std::string> labels;  // backing storage for borrowed label strings
};

struct tsgn_mapped {
  tsgn::TsgnGraph graph;
};

struct tsgn_report {
  tsgn::EvalReport report;
};

namespace {

thread_local std::string last_error;

tsgn_status fail(tsgn_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

tsgn_status status_of(tsgn::ErrorKind kind) {
  switch (kind) {
    case tsgn::ErrorKind::invalid_argument: return TSGN_INVALID_ARGUMENT;
    case tsgn::ErrorKind::io: return TSGN_IO;
    case tsgn::ErrorKind::format: return TSGN_FORMAT;
    case tsgn::ErrorKind::incompatible: return TSGN_INCOMPATIBLE;
    case tsgn::ErrorKind::not_found: return TSGN_NOT_FOUND;
  }
  return TSGN_INTERNAL;
}

// Runs `body` and converts any exception into a status.
template <class F>
tsgn_status guarded(F&& body) noexcept {
  try {
    body();
    return TSGN_OK;
  } catch (const tsgn::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TSGN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TSGN_INTERNAL, e.what());
  } catch (...) {
    return fail(TSGN_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw tsgn::Error(tsgn::ErrorKind::invalid_argument, what);
}

tsgn::Variant to_variant(tsgn_variant v) {
  switch (v) {
    case TSGN_VARIANT_PLAIN: return tsgn::Variant::plain;
    case TSGN_VARIANT_DIRECTED: return tsgn::Variant::directed;
    case TSGN_VARIANT_TEMPORAL: return tsgn::Variant::temporal;
    case TSGN_VARIANT_MULTIPLE: return tsgn::Variant::multiple;
  }
  throw tsgn::Error(tsgn::ErrorKind::invalid_argument, "unknown variant");
}

tsgn_dataset* wrap(tsgn::DatasetManifest m) {
  auto* d = new tsgn_dataset{std::move(m), {}};
  d->labels.reserve(d->manifest.graphs.size());
  for (const auto& g : d->manifest.graphs) d->labels.push_back(g.label().value_or(""));
  return d;
}

const tsgn::TransactionGraph& graph_at(const tsgn_dataset* d, std::size_t index) {
  require(d != nullptr, "dataset handle is null");
  if (index >= d->manifest.graphs.size()) {
    throw tsgn::Error(tsgn::ErrorKind::invalid_argument,
                      fmt::format("graph index {} out of range ({} graphs)", index,
                                  d->manifest.graphs.size()));
  }
  return d->manifest.graphs[index];
}

void copy_features(const tsgn::FeatureVector& f, double* out) {
  for (std::size_t i = 0; i < tsgn::kFeatureCount; ++i) out[i] = f.values[i];
}

void write_file(const char* path, const std::string& content) {
  require(path != nullptr, "path is null");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw tsgn::Error(tsgn::ErrorKind::io, fmt::format("cannot open '{}' for writing", path));
  out << content;
  out.close();
  if (!out) throw tsgn::Error(tsgn::ErrorKind::io, fmt::format("failed writing '{}'", path));
}

}  // namespace

extern "C" {

const char* tsgn_last_error(void) { return last_error.c_str(); }

const char* tsgn_status_name(tsgn_status status) {
  switch (status) {
    case TSGN_OK: return "ok";
    case TSGN_INVALID_ARGUMENT: return "invalid argument";
    case TSGN_IO: return "i/o error";
    case TSGN_FORMAT: return "format error";
    case TSGN_INCOMPATIBLE: return "incompatible";
    case TSGN_NOT_FOUND: return "not found";
    case TSGN_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tsgn_status tsgn_parse_variant(const char* name, tsgn_variant* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = static_cast<tsgn_variant>(tsgn::parse_variant(name));
  });
}

tsgn_status tsgn_parse_form(const char* name, tsgn_form* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = tsgn::parse_form(name) == tsgn::Form::star ? TSGN_FORM_STAR : TSGN_FORM_NET;
  });
}

tsgn_status tsgn_parse_tier(const char* name, tsgn_tier* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = static_cast<tsgn_tier>(tsgn::parse_tier(name));
  });
}

const char* tsgn_variant_name(tsgn_variant variant) {
  switch (variant) {
    case TSGN_VARIANT_PLAIN: return "tsgn";
    case TSGN_VARIANT_DIRECTED: return "dtsgn";
    case TSGN_VARIANT_TEMPORAL: return "ttsgn";
    case TSGN_VARIANT_MULTIPLE: return "mtsgn";
  }
  return nullptr;
}

double tsgn_map_weight(double a, double b) { return tsgn::map_weight(a, b); }

const char* tsgn_feature_name(size_t index) {
  if (index >= tsgn::kFeatureCount) return nullptr;
  // The names are string literals, hence null-terminated.
  return tsgn::feature_names()[index].data();
}

tsgn_status tsgn_dataset_synthesize(const char* profile, size_t n_per_class, uint64_t seed,
                                    tsgn_dataset** out) {
  return guarded([&] {
    require(profile != nullptr && out != nullptr, "null argument");
    *out = wrap(tsgn::generate_synthetic_dataset({profile, n_per_class, seed}));
  });
}

tsgn_status tsgn_dataset_load(const char* dir, tsgn_dataset** out) {
  return guarded([&] {
    require(dir != nullptr && out != nullptr, "null argument");
    *out = wrap(tsgn::load_dataset(dir));
  });
}

tsgn_status tsgn_dataset_save(const tsgn_dataset* dataset, const char* dir) {
  return guarded([&] {
    require(dataset != nullptr && dir != nullptr, "null argument");
    tsgn::save_dataset(dataset->manifest, dir);
  });
}

tsgn_status tsgn_dataset_reextract(const tsgn_dataset* dataset, tsgn_form form, tsgn_tier tier,
                                   tsgn_dataset** out) {
  return guarded([&] {
    require(dataset != nullptr && out != nullptr, "null argument");
    require(tier >= TSGN_TIER_PLAIN && tier <= TSGN_TIER_MULTIEDGE, "unknown tier");
    *out = wrap(tsgn::reextract(dataset->manifest,
                                form == TSGN_FORM_STAR ? tsgn::Form::star : tsgn::Form::net,
                                static_cast<tsgn::Tier>(tier)));
  });
}

void tsgn_dataset_free(tsgn_dataset* dataset) { delete dataset; }

size_t tsgn_dataset_size(const tsgn_dataset* dataset) {
  return dataset ? dataset->manifest.graphs.size() : 0;
}

const char* tsgn_dataset_name(const tsgn_dataset* dataset) {
  return dataset ? dataset->manifest.name.c_str() : nullptr;
}

const char* tsgn_dataset_graph_id(const tsgn_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->manifest.graph_ids.size()) return nullptr;
  return dataset->manifest.graph_ids[index].c_str();
}

const char* tsgn_dataset_graph_label(const tsgn_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->labels.size()) return nullptr;
  return dataset->labels[index].c_str();
}

tsgn_status tsgn_dataset_graph_counts(const tsgn_dataset* dataset, size_t index, size_t* nodes,
                                      size_t* edges) {
  return guarded([&] {
    const auto& g = graph_at(dataset, index);
    if (nodes) *nodes = g.node_count();
    if (edges) *edges = g.edge_count();
  });
}

tsgn_status tsgn_dataset_graph_features(const tsgn_dataset* dataset, size_t index, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    copy_features(tsgn::handcrafted_features(graph_at(dataset, index)), out);
  });
}

tsgn_status tsgn_dataset_check_variant(const tsgn_dataset* dataset, tsgn_variant variant) {
  return guarded([&] {
    require(dataset != nullptr, "dataset handle is null");
    tsgn::require_compatible(dataset->manifest, to_variant(variant));
  });
}

tsgn_status tsgn_dataset_stats_table(const tsgn_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset != nullptr && out != nullptr, "null argument");
    const auto table = tsgn::stats_table({dataset->manifest});
    auto* buffer = new char[table.size() + 1];
    table.copy(buffer, table.size());
    buffer[table.size()] = '\0';
    *out = buffer;
  });
}

void tsgn_string_free(char* s) { delete[] s; }

tsgn_status tsgn_dataset_write_features(const tsgn_dataset* dataset, const tsgn_variant* variant,
                                        unsigned threads, const char* path) {
  return guarded([&] {
    require(dataset != nullptr, "dataset handle is null");
    std::optional<tsgn::Variant> v;
    if (variant) v = to_variant(*variant);
    write_file(path, tsgn::to_csv(tsgn::dataset_features(dataset->manifest, v,
                                                         threads == 0 ? 1 : threads)));
  });
}

tsgn_status tsgn_map(const tsgn_dataset* dataset, size_t index, tsgn_variant variant,
                     tsgn_mapped** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto& g = graph_at(dataset, index);
    const auto v = to_variant(variant);
    tsgn::require_compatible(dataset->manifest, v);
    *out = new tsgn_mapped{tsgn::build(g, v)};
  });
}

void tsgn_mapped_free(tsgn_mapped* mapped) { delete mapped; }

size_t tsgn_mapped_node_count(const tsgn_mapped* mapped) {
  return mapped ? mapped->graph.nodes.size() : 0;
}

size_t tsgn_mapped_edge_count(const tsgn_mapped* mapped) {
  return mapped ? mapped->graph.edges.size() : 0;
}

tsgn_status tsgn_mapped_edge(const tsgn_mapped* mapped, size_t index, uint32_t* from, uint32_t* to,
                             double* weight) {
  return guarded([&] {
    require(mapped != nullptr, "mapped handle is null");
    require(index < mapped->graph.edges.size(), "edge index out of range");
    const auto& e = mapped->graph.edges[index];
    if (from) *from = e.from;
    if (to) *to = e.to;
    if (weight) *weight = e.weight;
  });
}

tsgn_status tsgn_mapped_node_edge_id(const tsgn_mapped* mapped, size_t index, uint32_t* edge_id) {
  return guarded([&] {
    require(mapped != nullptr && edge_id != nullptr, "null argument");
    require(index < mapped->graph.nodes.size(), "node index out of range");
    *edge_id = mapped->graph.nodes[index].edge_id;
  });
}

tsgn_status tsgn_mapped_features(const tsgn_mapped* mapped, double* out) {
  return guarded([&] {
    require(mapped != nullptr && out != nullptr, "null argument");
    copy_features(tsgn::handcrafted_features(mapped->graph), out);
  });
}

tsgn_status tsgn_mapped_write(const tsgn_mapped* mapped, const char* path) {
  return guarded([&] {
    require(mapped != nullptr, "mapped handle is null");
    const auto& g = mapped->graph;
    std::string text = fmt::format("# variant={} directed={} nodes={} edges={}\nfrom,to,weight\n",
                                   tsgn::variant_name(g.variant), g.directed ? 1 : 0,
                                   g.nodes.size(), g.edges.size());
    for (const auto& e : g.edges) text += fmt::format("{},{},{}\n", e.from, e.to, e.weight);
    write_file(path, text);
  });
}

void tsgn_eval_options_init(tsgn_eval_options* options) {
  if (!options) return;
  const tsgn::EvalOptions defaults;
  options->n_repeats = defaults.n_repeats;
  options->train_fraction = defaults.train_fraction;
  options->seed = defaults.seed;
  options->n_trees = defaults.forest.n_trees;
  options->max_depth = defaults.forest.max_depth;
  options->min_samples_leaf = defaults.forest.min_samples_leaf;
  options->threads = defaults.threads;
  options->positive_label = nullptr;
}

tsgn_status tsgn_evaluate(const tsgn_dataset* dataset, const tsgn_variant* variants,
                          size_t n_variants, const tsgn_eval_options* options,
                          tsgn_report** out) {
  return guarded([&] {
    require(dataset != nullptr && options != nullptr && out != nullptr, "null argument");
    require(n_variants == 0 || variants != nullptr, "variants is null");
    std::vector<tsgn::Variant> vs;
    for (size_t i = 0; i < n_variants; ++i) vs.push_back(to_variant(variants[i]));

    tsgn::EvalOptions o;
    o.n_repeats = options->n_repeats;
    o.train_fraction = options->train_fraction;
    o.seed = options->seed;
    o.forest.n_trees = options->n_trees;
    o.forest.max_depth = options->max_depth;
    o.forest.min_samples_leaf = options->min_samples_leaf;
    o.threads = options->threads == 0 ? 1 : options->threads;
    if (options->positive_label) o.positive_label = options->positive_label;
    *out = new tsgn_report{tsgn::run_evaluation(dataset->manifest, vs, o)};
  });
}

void tsgn_report_free(tsgn_report* report) { delete report; }

size_t tsgn_report_size(const tsgn_report* report) { return report ? report->report.rows.size() : 0; }

tsgn_status tsgn_report_row(const tsgn_report* report, size_t index, const char** name,
                            double* mean_f1, double* std_f1, int* has_increase,
                            double* percent_increase) {
  return guarded([&] {
    require(report != nullptr, "report handle is null");
    require(index < report->report.rows.size(), "row index out of range");
    const auto& row = report->report.rows[index];
    if (name) *name = row.variant.c_str();
    if (mean_f1) *mean_f1 = row.mean_f1;
    if (std_f1) *std_f1 = row.std_f1;
    if (has_increase) *has_increase = row.percent_increase ? 1 : 0;
    if (percent_increase) *percent_increase = row.percent_increase.value_or(0.0);
  });
}

tsgn_status tsgn_report_write_text(const tsgn_report* report, const char* path) {
  return guarded([&] {
    require(report != nullptr, "report handle is null");
    write_file(path, report->report.to_text());
  });
}

tsgn_status tsgn_report_write_csv(const tsgn_report* report, const char* path) {
  return guarded([&] {
    require(report != nullptr, "report handle is null");
    write_file(path, report->report.to_csv());
  });
}

}  // extern "C"
