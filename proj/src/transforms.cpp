#include "tsgn/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "tsgn/error.hpp"

namespace tsgn {

std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::plain: return "tsgn";
    case Variant::directed: return "dtsgn";
    case Variant::temporal: return "ttsgn";
    case Variant::multiple: return "mtsgn";
  }
  return "unknown";
}

double map_weight(double w_a, double w_b) noexcept {
  if (w_a == 0.0 && w_b == 0.0) return 0.0;
  return std::log((w_a + w_b) / 2.0);
}

namespace {

std::vector<TsgnNode> make_nodes(const TransactionGraph& g) {
  std::vector<TsgnNode> nodes;
  nodes.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    nodes.push_back(TsgnNode{e.id, e.src, e.dst, e.amount, e.timestamp});
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const TsgnNode& a, const TsgnNode& b) { return a.edge_id < b.edge_id; });
  return nodes;
}

// Compressed lists of TSGN node indices per address.
struct Incidence {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> items;

  std::span<std::uint32_t> at(NodeId v) {
    return {items.data() + offsets[v], items.data() + offsets[v + 1]};
  }
};

template <typename Endpoints>
Incidence incidence(std::size_t n_addresses, const std::vector<TsgnNode>& nodes, Endpoints endpoints) {
  Incidence inc;
  inc.offsets.assign(n_addresses + 1, 0);
  for (const auto& node : nodes) {
    endpoints(node, [&](NodeId v) { ++inc.offsets[v + 1]; });
  }
  std::partial_sum(inc.offsets.begin(), inc.offsets.end(), inc.offsets.begin());
  inc.items.resize(inc.offsets.back());
  std::vector<std::uint32_t> cursor(inc.offsets.begin(), inc.offsets.end() - 1);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    endpoints(nodes[i], [&](NodeId v) { inc.items[cursor[v]++] = i; });
  }
  return inc;
}

void sort_edges(std::vector<TsgnEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const TsgnEdge& a, const TsgnEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
}

void require_direction(const TransactionGraph& g) {
  if (!g.flags().directed) {
    throw Error(ErrorKind::incompatible, "direction attribute required");
  }
}

void require_timestamps(const TransactionGraph& g) {
  for (const auto& e : g.edges()) {
    if (!e.timestamp) {
      throw Error(ErrorKind::incompatible,
                  fmt::format("temporal attribute required: edge {} has no timestamp", e.id));
    }
  }
}

// Head-to-tail pairs through every address. With `temporal`, only pairs whose
// timestamps strictly increase along the flow are kept; outgoing lists are
// time-sorted so each incoming transaction visits only its valid successors.
TsgnGraph head_to_tail(const TransactionGraph& g, Variant variant, bool temporal) {
  TsgnGraph out;
  out.variant = variant;
  out.directed = true;
  out.nodes = make_nodes(g);
  const auto& nodes = out.nodes;
  const auto n = g.node_count();

  auto incoming = incidence(n, nodes, [](const TsgnNode& t, auto add) { add(t.dst); });
  auto outgoing = incidence(n, nodes, [](const TsgnNode& t, auto add) { add(t.src); });

  for (NodeId v = 0; v < n; ++v) {
    auto in = incoming.at(v);
    auto succ = outgoing.at(v);
    if (in.empty() || succ.empty()) continue;
    if (temporal) {
      std::sort(succ.begin(), succ.end(), [&](std::uint32_t a, std::uint32_t b) {
        return *nodes[a].timestamp < *nodes[b].timestamp;
      });
    }
    for (auto a : in) {
      auto first = succ.begin();
      if (temporal) {
        first = std::upper_bound(succ.begin(), succ.end(), *nodes[a].timestamp,
                                 [&](std::int64_t t, std::uint32_t b) { return t < *nodes[b].timestamp; });
      }
      for (auto it = first; it != succ.end(); ++it) {
        if (*it == a) continue;
        out.edges.push_back(TsgnEdge{a, *it, map_weight(nodes[a].amount, nodes[*it].amount)});
      }
    }
  }
  sort_edges(out.edges);
  return out;
}

}  // namespace

TsgnGraph build_tsgn(const TransactionGraph& g) {
  const auto simple = undirected_projection(g);
  TsgnGraph out;
  out.variant = Variant::plain;
  out.directed = false;
  out.nodes = make_nodes(simple);
  const auto& nodes = out.nodes;

  auto inc = incidence(simple.node_count(), nodes, [](const TsgnNode& t, auto add) {
    add(t.src);
    add(t.dst);
  });
  // Two distinct edges of a simple graph share at most one endpoint, so every
  // pair is emitted exactly once.
  for (NodeId v = 0; v < simple.node_count(); ++v) {
    auto list = inc.at(v);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        auto a = std::min(list[i], list[j]);
        auto b = std::max(list[i], list[j]);
        out.edges.push_back(TsgnEdge{a, b, map_weight(nodes[a].amount, nodes[b].amount)});
      }
    }
  }
  sort_edges(out.edges);
  return out;
}

TsgnGraph build_directed_tsgn(const TransactionGraph& g) {
  require_direction(g);
  return head_to_tail(directed_projection(g), Variant::directed, false);
}

TsgnGraph build_temporal_tsgn(const TransactionGraph& g) {
  require_direction(g);
  require_timestamps(g);
  return head_to_tail(directed_projection(g), Variant::temporal, true);
}

TsgnGraph build_multiple_tsgn(const TransactionGraph& g) {
  require_direction(g);
  require_timestamps(g);
  return head_to_tail(g, Variant::multiple, true);
}

TsgnGraph build(const TransactionGraph& g, Variant v) {
  switch (v) {
    case Variant::plain: return build_tsgn(g);
    case Variant::directed: return build_directed_tsgn(g);
    case Variant::temporal: return build_temporal_tsgn(g);
    case Variant::multiple: return build_multiple_tsgn(g);
  }
  throw Error(ErrorKind::invalid_argument, "unknown variant");
}

}  // namespace tsgn
