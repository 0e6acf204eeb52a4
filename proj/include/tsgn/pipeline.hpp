#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsgn/evaluate.hpp"
#include "tsgn/features.hpp"
#include "tsgn/ingest.hpp"
#include "tsgn/transforms.hpp"

namespace tsgn {

Variant parse_variant(std::string_view name);

/// Throws `Error(incompatible)` naming the missing attribute when graphs of
/// `m` cannot be mapped with `v`: directed variants need direction, temporal
/// ones timestamps on every graph, and Multiple-TSGN the multiedge tier.
void require_compatible(const DatasetManifest& m, Variant v);

/// Ten handcrafted features per graph, computed on the graph itself when
/// `variant` is empty and on its mapping otherwise. Rows follow `m.graphs`.
FeatureMatrix dataset_features(const DatasetManifest& m, std::optional<Variant> variant,
                               unsigned threads = 1);

/// The original-network row plus one row per variant, where each variant row
/// fuses original and mapped features and projects them back to the original
/// width inside every repeat. Percent increases are relative to the first row.
EvalReport run_evaluation(const DatasetManifest& m, std::span<const Variant> variants,
                          const EvalOptions& options);

}  // namespace tsgn
