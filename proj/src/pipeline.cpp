#include "tsgn/pipeline.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tsgn/error.hpp"
#include "tsgn/metrics.hpp"
#include "tsgn/parallel.hpp"

namespace tsgn {

Variant parse_variant(std::string_view name) {
  for (auto v : {Variant::plain, Variant::directed, Variant::temporal, Variant::multiple}) {
    if (variant_name(v) == name) return v;
  }
  throw Error(ErrorKind::invalid_argument,
              fmt::format("unknown variant '{}' (tsgn|dtsgn|ttsgn|mtsgn)", name));
}

void require_compatible(const DatasetManifest& m, Variant v) {
  if (v == Variant::plain) return;
  if (v != Variant::directed) {
    // The plain tier drops timestamps along with direction, so a temporal
    // variant reports the timestamp as the first missing attribute.
    const bool temporal = std::all_of(m.graphs.begin(), m.graphs.end(),
                                      [](const TransactionGraph& g) { return g.flags().temporal; });
    if (!temporal) {
      throw Error(ErrorKind::incompatible,
                  fmt::format("{}: temporal attribute required", variant_name(v)));
    }
  }
  if (m.tier == Tier::plain) {
    throw Error(ErrorKind::incompatible,
                fmt::format("{}: direction attribute required (dataset tier is plain)", variant_name(v)));
  }
  if (v == Variant::multiple && m.tier != Tier::multiedge) {
    throw Error(ErrorKind::incompatible,
                fmt::format("{}: multiedge attribute required (dataset tier is {})", variant_name(v),
                            tier_name(m.tier)));
  }
}

FeatureMatrix dataset_features(const DatasetManifest& m, std::optional<Variant> variant,
                               unsigned threads) {
  if (variant) require_compatible(m, *variant);
  std::vector<FeatureVector> rows(m.graphs.size());
  parallel_for(m.graphs.size(), threads, [&](std::size_t i) {
    rows[i] = variant ? handcrafted_features(build(m.graphs[i], *variant))
                      : handcrafted_features(m.graphs[i]);
  });
  return make_feature_matrix(rows, m.labels(), variant ? source_of(*variant) : Source::tn);
}

EvalReport run_evaluation(const DatasetManifest& m, std::span<const Variant> variants,
                          const EvalOptions& options) {
  for (auto v : variants) require_compatible(m, v);

  const auto tn = dataset_features(m, std::nullopt, options.threads);
  EvalReport report;
  auto add_row = [&](std::string name, const EvalResult& r) {
    ReportRow row;
    row.dataset = m.name;
    row.variant = std::move(name);
    row.mean_f1 = r.mean_f1;
    row.std_f1 = r.std_f1;
    row.n_repeats = r.n_repeats;
    row.seed = options.seed;
    if (!report.rows.empty() && report.rows.front().mean_f1 > 0.0) {
      row.percent_increase = percent_increase(r.mean_f1, report.rows.front().mean_f1);
    }
    report.rows.push_back(std::move(row));
  };

  EvalOptions base = options;
  base.pca_components = 0;
  add_row("tn", evaluate(tn, base));

  for (auto v : variants) {
    const auto mapped = dataset_features(m, v, options.threads);
    EvalOptions fused = options;
    fused.pca_components = tn.cols();
    add_row(fmt::format("tn+{}", variant_name(v)), evaluate(concatenate(tn, mapped), fused));
  }
  return report;
}

}  // namespace tsgn
