#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsgn {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Account identifier. Comparison is exact string equality; use
/// `Address::normalized` for hex addresses read from external data.
class Address {
 public:
  Address() = default;
  explicit Address(std::string id) : id_(std::move(id)) {}

  /// Lowercases ASCII letters (hex account addresses are case-insensitive).
  static Address normalized(std::string_view raw);

  const std::string& str() const noexcept { return id_; }
  bool empty() const noexcept { return id_.empty(); }

  auto operator<=>(const Address&) const = default;

 private:
  std::string id_;
};

/// One raw transaction as read from an export.
struct EdgeRecord {
  Address src;
  Address dst;
  double amount = 0.0;  // 0 for contract invocations
  std::optional<std::int64_t> timestamp;
  EdgeId id = 0;
};

/// A transaction inside a graph; endpoints index into the graph's node table.
struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double amount = 0.0;
  std::optional<std::int64_t> timestamp;
  EdgeId id = 0;
};

struct GraphFlags {
  bool directed = true;
  bool temporal = false;
  bool multiedge = false;

  bool operator==(const GraphFlags&) const = default;
};

/// An ego-network around a target account. Immutable after construction.
///
/// The plain constructor performs no checking so that malformed graphs can be
/// represented and diagnosed with `validate`. `from_records` builds a sorted
/// node table from the record endpoints and is the usual entry point.
class TransactionGraph {
 public:
  TransactionGraph() = default;
  TransactionGraph(std::vector<Address> nodes, std::vector<Edge> edges,
                   GraphFlags flags, std::optional<NodeId> center,
                   std::optional<std::string> label = std::nullopt);

  /// Nodes are the sorted, distinct endpoints plus `center`. Throws
  /// `Error(invalid_argument)` if the result violates a graph invariant.
  static TransactionGraph from_records(std::span<const EdgeRecord> records,
                                       const Address& center, GraphFlags flags,
                                       std::optional<std::string> label = std::nullopt);

  std::span<const Address> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Address& node(NodeId id) const { return nodes_.at(id); }
  std::optional<NodeId> find(const Address& address) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  const GraphFlags& flags() const noexcept { return flags_; }
  std::optional<NodeId> center() const noexcept { return center_; }
  const std::optional<std::string>& label() const noexcept { return label_; }

  /// True when every edge carries a timestamp.
  bool all_timestamped() const noexcept;

  /// The edges as address-level records, in storage order.
  std::vector<EdgeRecord> records() const;

  TransactionGraph with_flags(GraphFlags flags) const;
  TransactionGraph with_edges(std::vector<Edge> edges, GraphFlags flags) const;

 private:
  std::vector<Address> nodes_;
  std::vector<Edge> edges_;
  GraphFlags flags_;
  std::optional<NodeId> center_;
  std::optional<std::string> label_;
};

enum class Rule {
  empty_address,
  duplicate_node,
  missing_center,
  dangling_endpoint,
  self_loop,
  negative_amount,
  non_finite_amount,
  duplicate_edge_id,
  missing_timestamp,
  parallel_edge,
};

std::string_view rule_name(Rule rule) noexcept;

struct Violation {
  Rule rule;
  std::string subject;  // "edge <id>" or "node <address>"
  std::string message;
};

/// Empty iff every graph invariant holds.
std::vector<Violation> validate(const TransactionGraph& g);

/// Drops direction (and timestamps), keeping one edge per unordered node pair.
/// The surviving record of a collapsed group is the one with the largest
/// amount, ties going to the smallest edge id. Undirected simple input is
/// returned unchanged.
TransactionGraph undirected_projection(const TransactionGraph& g);

/// Collapses parallel same-direction records of a directed graph with the
/// same survivor rule as `undirected_projection`. Timestamps of survivors are
/// kept. Non-multiedge input is returned unchanged.
TransactionGraph directed_projection(const TransactionGraph& g);

/// Attribute selection applied before mapping.
struct AttributeSet {
  bool weight = true;
  bool direction = true;
  bool timestamp = true;
};

/// Restricts `g` to the requested attributes. Without direction the result is
/// the undirected projection; without timestamps a multi-edge graph is
/// collapsed (parallel records are only distinguishable by time); without
/// weight every amount becomes 1.
TransactionGraph attach_attributes(const TransactionGraph& g, AttributeSet attributes);

}  // namespace tsgn
