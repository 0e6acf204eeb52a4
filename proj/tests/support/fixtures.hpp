#pragma once

// Small hand-built transaction graphs with known mappings.

#include <optional>
#include <string>
#include <vector>

#include "tsgn/graph.hpp"

namespace fixture {

struct Transfer {
  const char* src;
  const char* dst;
  double amount;
  std::optional<std::int64_t> timestamp;
};

inline std::vector<tsgn::EdgeRecord> records(const std::vector<Transfer>& transfers) {
  std::vector<tsgn::EdgeRecord> out;
  for (const auto& t : transfers) {
    out.push_back({tsgn::Address(t.src), tsgn::Address(t.dst), t.amount, t.timestamp,
                   static_cast<tsgn::EdgeId>(out.size())});
  }
  return out;
}

inline tsgn::TransactionGraph graph(const std::vector<Transfer>& transfers, const char* center,
                                    tsgn::GraphFlags flags = {true, true, false}) {
  return tsgn::TransactionGraph::from_records(records(transfers), tsgn::Address(center), flags);
}

// Center c trades with n1..n5 (edges 0..4); n1-n2 (edge 5) and n3-n4
// (edge 6) also trade with each other.
inline std::vector<Transfer> hub_transfers() {
  return {
      {"n1", "c", 1.0, 1}, {"c", "n2", 2.0, 2}, {"n3", "c", 3.0, 3}, {"c", "n4", 4.0, 4},
      {"n5", "c", 5.0, 5}, {"n1", "n2", 6.0, 6}, {"n3", "n4", 7.0, 7},
  };
}

inline tsgn::TransactionGraph hub() { return graph(hub_transfers(), "c"); }

// Seven transfers t1..t7 (edges 0..6) at times 1..7 whose head-to-tail pairs
// include three that run backwards in time: (t3,t2), (t6,t1) and (t7,t3).
inline tsgn::TransactionGraph seven_transfer_flow() {
  return graph(
      {
          {"a", "c", 1.0, 1},
          {"c", "b", 1.0, 2},
          {"d", "c", 1.0, 3},
          {"c", "e", 1.0, 4},
          {"b", "e", 1.0, 5},
          {"e", "a", 1.0, 6},
          {"e", "d", 1.0, 7},
      },
      "c");
}

// Two transfers among v1, v2, v3 at times 4 then 7. Only the first chain
// runs head to tail.
inline std::vector<tsgn::TransactionGraph> two_transfer_chains() {
  return {
      graph({{"v1", "v2", 1.0, 4}, {"v2", "v3", 1.0, 7}}, "v2"),
      graph({{"v1", "v2", 1.0, 4}, {"v3", "v2", 1.0, 7}}, "v2"),
      graph({{"v2", "v1", 1.0, 4}, {"v3", "v2", 1.0, 7}}, "v2"),
      graph({{"v2", "v1", 1.0, 4}, {"v2", "v3", 1.0, 7}}, "v2"),
  };
}

}  // namespace fixture
