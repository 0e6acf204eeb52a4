#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tsgn/graph.hpp"

namespace tsgn {

enum class Variant {
  plain,     // TSGN
  directed,  // Directed-TSGN
  temporal,  // Temporal-TSGN
  multiple,  // Multiple-TSGN
};

std::string_view variant_name(Variant v) noexcept;

/// A node of a subgraph network: one transaction of the source graph.
struct TsgnNode {
  EdgeId edge_id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  double amount = 0.0;
  std::optional<std::int64_t> timestamp;
};

/// `from`/`to` index into `TsgnGraph::nodes`. For the plain variant
/// `from < to` and the edge is undirected.
struct TsgnEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double weight = 0.0;

  bool operator==(const TsgnEdge&) const = default;
};

/// Nodes are sorted by source edge id; edges are sorted by (from, to).
struct TsgnGraph {
  Variant variant = Variant::plain;
  bool directed = false;
  std::vector<TsgnNode> nodes;
  std::vector<TsgnEdge> edges;
};

/// Mapped weight of a pair of transactions: 0 when both amounts are zero,
/// otherwise ln((w_a + w_b) / 2). The result is negative when the mean amount
/// is below one. A single zero amount takes the logarithm branch.
double map_weight(double w_a, double w_b) noexcept;

/// Links two transactions iff they share an endpoint. Direction is discarded
/// first (see `undirected_projection`), so there is one node per unordered
/// address pair.
TsgnGraph build_tsgn(const TransactionGraph& g);

/// Links d_a -> d_b iff dst(d_a) == src(d_b). Anti-parallel transactions
/// produce a 2-cycle. Multi-edge input is collapsed with
/// `directed_projection`. Throws `Error(incompatible)` on undirected input.
TsgnGraph build_directed_tsgn(const TransactionGraph& g);

/// The Directed-TSGN edges whose upstream timestamp is strictly smaller than
/// the downstream one. The result is acyclic. Throws `Error(incompatible)`
/// when direction or a timestamp is missing.
TsgnGraph build_temporal_tsgn(const TransactionGraph& g);

/// The temporal rule applied to every record of a multi-edge graph, one node
/// per parallel transaction.
TsgnGraph build_multiple_tsgn(const TransactionGraph& g);

/// Dispatches on `v`.
TsgnGraph build(const TransactionGraph& g, Variant v);

}  // namespace tsgn
