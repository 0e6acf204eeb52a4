#include "tsgn/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "tsgn/error.hpp"

namespace tsgn {

Address Address::normalized(std::string_view raw) {
  std::string id(raw);
  std::transform(id.begin(), id.end(), id.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return Address(std::move(id));
}

TransactionGraph::TransactionGraph(std::vector<Address> nodes, std::vector<Edge> edges,
                                   GraphFlags flags, std::optional<NodeId> center,
                                   std::optional<std::string> label)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      flags_(flags),
      center_(center),
      label_(std::move(label)) {}

TransactionGraph TransactionGraph::from_records(std::span<const EdgeRecord> records,
                                                const Address& center, GraphFlags flags,
                                                std::optional<std::string> label) {
  std::vector<Address> nodes;
  nodes.reserve(records.size() * 2 + 1);
  nodes.push_back(center);
  for (const auto& r : records) {
    nodes.push_back(r.src);
    nodes.push_back(r.dst);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto index_of = [&nodes](const Address& a) {
    return static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), a) - nodes.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(records.size());
  for (const auto& r : records) {
    edges.push_back(Edge{index_of(r.src), index_of(r.dst), r.amount, r.timestamp, r.id});
  }

  TransactionGraph g(std::move(nodes), std::move(edges), flags, index_of(center), std::move(label));
  if (auto violations = validate(g); !violations.empty()) {
    const auto& v = violations.front();
    throw Error(ErrorKind::invalid_argument,
                fmt::format("{}: {} ({} violation(s) total)", v.subject, v.message,
                            violations.size()));
  }
  return g;
}

std::optional<NodeId> TransactionGraph::find(const Address& address) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), address);
  if (it == nodes_.end()) return std::nullopt;
  return static_cast<NodeId>(it - nodes_.begin());
}

bool TransactionGraph::all_timestamped() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.timestamp.has_value(); });
}

std::vector<EdgeRecord> TransactionGraph::records() const {
  std::vector<EdgeRecord> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) {
    out.push_back(EdgeRecord{nodes_.at(e.src), nodes_.at(e.dst), e.amount, e.timestamp, e.id});
  }
  return out;
}

TransactionGraph TransactionGraph::with_flags(GraphFlags flags) const {
  TransactionGraph g = *this;
  g.flags_ = flags;
  return g;
}

TransactionGraph TransactionGraph::with_edges(std::vector<Edge> edges, GraphFlags flags) const {
  return TransactionGraph(nodes_, std::move(edges), flags, center_, label_);
}

std::string_view rule_name(Rule rule) noexcept {
  switch (rule) {
    case Rule::empty_address: return "empty_address";
    case Rule::duplicate_node: return "duplicate_node";
    case Rule::missing_center: return "missing_center";
    case Rule::dangling_endpoint: return "dangling_endpoint";
    case Rule::self_loop: return "self_loop";
    case Rule::negative_amount: return "negative_amount";
    case Rule::non_finite_amount: return "non_finite_amount";
    case Rule::duplicate_edge_id: return "duplicate_edge_id";
    case Rule::missing_timestamp: return "missing_timestamp";
    case Rule::parallel_edge: return "parallel_edge";
  }
  return "unknown";
}

std::vector<Violation> validate(const TransactionGraph& g) {
  std::vector<Violation> out;
  const auto nodes = g.nodes();
  const auto n = nodes.size();

  std::set<Address> seen_nodes;
  for (const auto& a : nodes) {
    if (a.empty()) {
      out.push_back({Rule::empty_address, "node <empty>", "address must be non-empty"});
    } else if (!seen_nodes.insert(a).second) {
      out.push_back({Rule::duplicate_node, "node " + a.str(), "address listed twice"});
    }
  }

  if (!g.center() || *g.center() >= n) {
    out.push_back({Rule::missing_center, "graph", "center address is not a node"});
  }

  std::set<EdgeId> seen_ids;
  std::set<std::pair<NodeId, NodeId>> seen_pairs;
  const auto& flags = g.flags();
  for (const auto& e : g.edges()) {
    const auto subject = fmt::format("edge {}", e.id);
    if (e.src >= n || e.dst >= n) {
      out.push_back({Rule::dangling_endpoint, subject, "endpoint is not in the node set"});
    } else if (e.src == e.dst) {
      out.push_back({Rule::self_loop, subject, "source equals destination"});
    }
    if (!std::isfinite(e.amount)) {
      out.push_back({Rule::non_finite_amount, subject, "amount is not finite"});
    } else if (e.amount < 0.0) {
      out.push_back({Rule::negative_amount, subject, fmt::format("amount {} is negative", e.amount)});
    }
    if (!seen_ids.insert(e.id).second) {
      out.push_back({Rule::duplicate_edge_id, subject, "edge id used twice"});
    }
    if (flags.temporal && !e.timestamp) {
      out.push_back({Rule::missing_timestamp, subject, "temporal graph edge has no timestamp"});
    }
    if (!flags.multiedge) {
      auto key = flags.directed ? std::pair{e.src, e.dst}
                                : std::pair{std::min(e.src, e.dst), std::max(e.src, e.dst)};
      if (!seen_pairs.insert(key).second) {
        out.push_back({Rule::parallel_edge, subject,
                       flags.directed ? "second edge for the same ordered pair"
                                      : "second edge for the same node pair"});
      }
    }
  }
  return out;
}

namespace {

// Survivor of a collapsed group: largest amount, then smallest id.
bool preferred(const Edge& a, const Edge& b) {
  if (a.amount != b.amount) return a.amount > b.amount;
  return a.id < b.id;
}

template <typename KeyFn>
std::vector<Edge> collapse(std::span<const Edge> edges, KeyFn key) {
  std::map<std::pair<NodeId, NodeId>, Edge> best;
  for (const auto& e : edges) {
    auto [it, inserted] = best.try_emplace(key(e), e);
    if (!inserted && preferred(e, it->second)) it->second = e;
  }
  std::vector<Edge> out;
  out.reserve(best.size());
  for (auto& [_, e] : best) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  return out;
}

}  // namespace

TransactionGraph undirected_projection(const TransactionGraph& g) {
  const auto& flags = g.flags();
  if (!flags.directed && !flags.multiedge && !flags.temporal) return g;

  const auto nodes = g.nodes();
  auto oriented = [&nodes](NodeId a, NodeId b) {
    return nodes[b] < nodes[a] ? std::pair{b, a} : std::pair{a, b};
  };
  auto edges = collapse(g.edges(), [&](const Edge& e) { return oriented(e.src, e.dst); });
  for (auto& e : edges) {
    std::tie(e.src, e.dst) = oriented(e.src, e.dst);
    e.timestamp.reset();
  }
  return g.with_edges(std::move(edges), GraphFlags{false, false, false});
}

TransactionGraph directed_projection(const TransactionGraph& g) {
  const auto& flags = g.flags();
  if (!flags.directed) {
    throw Error(ErrorKind::incompatible, "direction attribute required");
  }
  if (!flags.multiedge) return g;
  auto edges = collapse(g.edges(), [](const Edge& e) { return std::pair{e.src, e.dst}; });
  GraphFlags out_flags{true, false, false};
  TransactionGraph collapsed = g.with_edges(std::move(edges), out_flags);
  out_flags.temporal = flags.temporal && collapsed.all_timestamped();
  return collapsed.with_flags(out_flags);
}

TransactionGraph attach_attributes(const TransactionGraph& g, AttributeSet attributes) {
  TransactionGraph out = g;
  if (!attributes.direction) {
    out = undirected_projection(out);
  } else if (!attributes.timestamp && out.flags().multiedge) {
    out = directed_projection(out);
  }
  if (!attributes.timestamp || !attributes.weight) {
    std::vector<Edge> edges(out.edges().begin(), out.edges().end());
    GraphFlags flags = out.flags();
    for (auto& e : edges) {
      if (!attributes.timestamp) e.timestamp.reset();
      if (!attributes.weight) e.amount = 1.0;
    }
    if (!attributes.timestamp) flags.temporal = false;
    out = out.with_edges(std::move(edges), flags);
  }
  return out;
}

}  // namespace tsgn
