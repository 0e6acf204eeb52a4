#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tsgn/graph.hpp"
#include "tsgn/transforms.hpp"

namespace tsgn {

inline constexpr std::size_t kFeatureCount = 10;

/// Which graph a feature vector was computed on.
enum class Source { tn, tsgn, directed_tsgn, temporal_tsgn, multiple_tsgn };

std::string_view source_name(Source s) noexcept;
Source source_of(Variant v) noexcept;

/// Names of the ten handcrafted features, in vector order.
const std::array<std::string_view, kFeatureCount>& feature_names() noexcept;

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  Source source = Source::tn;
};

/// Unweighted undirected simple graph in adjacency-list form. Every feature is
/// computed on this view.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n = 0) : adjacency_(n) {}

  /// Ignores self-loops and repeated pairs.
  static SimpleGraph from_pairs(std::size_t n,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);
  static SimpleGraph from(const TransactionGraph& g);
  static SimpleGraph from(const TsgnGraph& g);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adjacency_[v]; }
  std::size_t degree(std::uint32_t v) const { return adjacency_[v].size(); }

 private:
  std::vector<std::vector<std::uint32_t>> adjacency_;  // sorted
  std::size_t edge_count_ = 0;
};

double average_neighbor_degree(const SimpleGraph& g);
double average_clustering(const SimpleGraph& g);

/// Power iteration on A + I from the all-ones vector; stops when successive
/// Rayleigh quotients differ by less than 1e-9 or after 1000 iterations. The
/// shift keeps the top eigenvalue dominant on bipartite graphs.
double largest_eigenvalue(const SimpleGraph& g);

/// Brandes betweenness per node, normalized by 2 / ((n-1)(n-2)).
std::vector<double> betweenness(const SimpleGraph& g);

/// Per node (r-1)/sum(d) * (r-1)/(n-1), r = size of the reachable set
/// including the node itself; 0 for isolated nodes.
std::vector<double> closeness(const SimpleGraph& g);

/// The ten topological attributes. Throws `Error(invalid_argument)` on a graph
/// without nodes.
FeatureVector handcrafted_features(const SimpleGraph& g, Source source);
FeatureVector handcrafted_features(const TransactionGraph& g);
FeatureVector handcrafted_features(const TsgnGraph& g);

/// Rows are graphs. `columns` names each column's origin.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;
  std::vector<std::string> columns;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Builds a matrix from per-graph vectors; columns are `<source>.<feature>`.
FeatureMatrix make_feature_matrix(const std::vector<FeatureVector>& rows,
                                  std::vector<std::string> labels, Source source);

/// [a_row || b_row] per graph. Throws if row counts or labels differ.
FeatureMatrix concatenate(const FeatureMatrix& a, const FeatureMatrix& b);

/// Concatenates and projects onto the top `target_dim` principal components
/// fitted on all rows. `target_dim == 0` means the width of `tn`.
FeatureMatrix fuse_and_project(const FeatureMatrix& tn, const FeatureMatrix& tsgn,
                               std::size_t target_dim = 0);

/// Header = column names then `label`; one row per graph.
std::string to_csv(const FeatureMatrix& m);

}  // namespace tsgn
