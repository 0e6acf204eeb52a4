#pragma once

// Reference implementations used by the unit and acceptance tests. They are
// written for clarity over speed and share no code with the library beyond
// its data types.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "tsgn/features.hpp"
#include "tsgn/graph.hpp"
#include "tsgn/transforms.hpp"

namespace oracle {

// A mapped edge keyed by the ids of the two source transactions.
struct Link {
  tsgn::EdgeId from;
  tsgn::EdgeId to;
  double weight;

  auto operator<=>(const Link&) const = default;
};

struct Mapping {
  std::set<tsgn::EdgeId> nodes;
  std::set<Link> links;

  bool operator==(const Mapping&) const = default;
};

// The library output translated to transaction ids.
Mapping to_mapping(const tsgn::TsgnGraph& g);

// Exhaustive pair enumeration for each variant.
Mapping shared_endpoint(const tsgn::TransactionGraph& g);
Mapping head_to_tail(const tsgn::TransactionGraph& g);
Mapping head_to_tail_increasing(const tsgn::TransactionGraph& g);
Mapping per_record(const tsgn::TransactionGraph& g);

double weight(double a, double b);

enum class Tier { plain, directed, multiedge };

// Random graph with at most `max_nodes` accounts. Plain graphs are undirected
// and simple; directed ones are simple and temporal; multiedge ones are
// temporal with parallel records. Timestamps come from a small range so that
// ties occur.
tsgn::TransactionGraph random_graph(std::mt19937_64& rng, Tier tier, std::size_t max_nodes = 8);

// Adjacency matrix of an undirected simple graph.
using Adjacency = std::vector<std::vector<bool>>;

Adjacency random_adjacency(std::mt19937_64& rng, std::size_t max_nodes = 8);
tsgn::SimpleGraph to_simple(const Adjacency& a);

// All ten features from all-pairs shortest paths and a dense eigensolve.
std::array<double, tsgn::kFeatureCount> features(const Adjacency& a);

// Kahn's algorithm on a directed mapped graph.
bool is_acyclic(const tsgn::TsgnGraph& g);

}  // namespace oracle
