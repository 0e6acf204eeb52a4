#include "tsgn/features.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "tsgn/error.hpp"
#include "tsgn/pca.hpp"

namespace tsgn {

std::string_view source_name(Source s) noexcept {
  switch (s) {
    case Source::tn: return "tn";
    case Source::tsgn: return "tsgn";
    case Source::directed_tsgn: return "dtsgn";
    case Source::temporal_tsgn: return "ttsgn";
    case Source::multiple_tsgn: return "mtsgn";
  }
  return "unknown";
}

Source source_of(Variant v) noexcept {
  switch (v) {
    case Variant::plain: return Source::tsgn;
    case Variant::directed: return Source::directed_tsgn;
    case Variant::temporal: return Source::temporal_tsgn;
    case Variant::multiple: return Source::multiple_tsgn;
  }
  return Source::tn;
}

const std::array<std::string_view, kFeatureCount>& feature_names() noexcept {
  static constexpr std::array<std::string_view, kFeatureCount> names = {
      "node_count",        "edge_count",         "average_degree",     "leaf_fraction",
      "density",           "average_neighbor_degree", "average_clustering",
      "largest_eigenvalue", "average_betweenness", "average_closeness",
  };
  return names;
}

SimpleGraph SimpleGraph::from_pairs(std::size_t n,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  SimpleGraph g(n);
  for (auto [a, b] : pairs) {
    if (a == b) continue;
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  std::size_t twice = 0;
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    twice += list.size();
  }
  g.edge_count_ = twice / 2;
  return g;
}

SimpleGraph SimpleGraph::from(const TransactionGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(g.edge_count());
  for (const auto& e : g.edges()) pairs.emplace_back(e.src, e.dst);
  return from_pairs(g.node_count(), pairs);
}

SimpleGraph SimpleGraph::from(const TsgnGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(g.edges.size());
  for (const auto& e : g.edges) pairs.emplace_back(e.from, e.to);
  return from_pairs(g.nodes.size(), pairs);
}

double average_neighbor_degree(const SimpleGraph& g) {
  const auto n = g.node_count();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;
    double sum = 0.0;
    for (auto u : nbrs) sum += static_cast<double>(g.degree(u));
    total += sum / static_cast<double>(nbrs.size());
  }
  return total / static_cast<double>(n);
}

double average_clustering(const SimpleGraph& g) {
  const auto n = g.node_count();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& nbrs = g.neighbors(v);
    const auto k = nbrs.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i) {
      // neighbors of nbrs[i] that are also later neighbors of v
      const auto& other = g.neighbors(nbrs[i]);
      auto a = std::upper_bound(other.begin(), other.end(), nbrs[i]);
      auto b = nbrs.begin() + static_cast<std::ptrdiff_t>(i) + 1;
      while (a != other.end() && b != nbrs.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++links;
          ++a;
          ++b;
        }
      }
    }
    total += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return total / static_cast<double>(n);
}

double largest_eigenvalue(const SimpleGraph& g) {
  constexpr double kTolerance = 1e-9;
  constexpr int kMaxIterations = 1000;

  const auto n = g.node_count();
  if (n == 0) return 0.0;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  double previous = 0.0;
  double rayleigh = 0.0;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (std::uint32_t v = 0; v < n; ++v) {
      double acc = x[v];
      for (auto u : g.neighbors(v)) acc += x[u];
      y[v] = acc;
    }
    // x is unit length, so x.y is the Rayleigh quotient of A + I.
    rayleigh = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    const double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    for (std::uint32_t v = 0; v < n; ++v) x[v] = y[v] / norm;
    if (iter > 0 && std::abs(rayleigh - previous) < kTolerance) break;
    previous = rayleigh;
  }
  return rayleigh - 1.0;
}

std::vector<double> betweenness(const SimpleGraph& g) {
  const auto n = g.node_count();
  std::vector<double> centrality(n, 0.0);
  if (n <= 2) return centrality;

  std::vector<std::vector<std::uint32_t>> predecessors(n);
  std::vector<double> sigma(n);
  std::vector<int> dist(n);
  std::vector<double> delta(n);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::deque<std::uint32_t> queue;

  for (std::uint32_t s = 0; s < n; ++s) {
    for (auto& p : predecessors) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (auto w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          predecessors[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto w = *it;
      for (auto v : predecessors[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both ends.
  const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  for (auto& c : centrality) c *= scale;
  return centrality;
}

std::vector<double> closeness(const SimpleGraph& g) {
  const auto n = g.node_count();
  std::vector<double> out(n, 0.0);
  if (n <= 1) return out;
  std::vector<int> dist(n);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.push_back(s);
    std::size_t reached = 1;
    double total = 0.0;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto w : g.neighbors(v)) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        total += dist[w];
        ++reached;
        queue.push_back(w);
      }
    }
    if (total > 0.0) {
      const double r = static_cast<double>(reached - 1);
      out[s] = (r / total) * (r / static_cast<double>(n - 1));
    }
  }
  return out;
}

FeatureVector handcrafted_features(const SimpleGraph& g, Source source) {
  const auto n = g.node_count();
  if (n == 0) throw Error(ErrorKind::invalid_argument, "features of an empty graph are undefined");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(g.edge_count());

  std::size_t leaves = 0;
  for (std::uint32_t v = 0; v < n; ++v) leaves += g.degree(v) == 1 ? 1 : 0;

  auto mean = [nd](const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / nd;
  };

  FeatureVector f;
  f.source = source;
  f.values = {
      nd,
      md,
      2.0 * md / nd,
      static_cast<double>(leaves) / nd,
      n > 1 ? 2.0 * md / (nd * (nd - 1.0)) : 0.0,
      average_neighbor_degree(g),
      average_clustering(g),
      largest_eigenvalue(g),
      mean(betweenness(g)),
      mean(closeness(g)),
  };
  return f;
}

FeatureVector handcrafted_features(const TransactionGraph& g) {
  return handcrafted_features(SimpleGraph::from(g), Source::tn);
}

FeatureVector handcrafted_features(const TsgnGraph& g) {
  return handcrafted_features(SimpleGraph::from(g), source_of(g.variant));
}

FeatureMatrix make_feature_matrix(const std::vector<FeatureVector>& rows,
                                  std::vector<std::string> labels, Source source) {
  if (labels.size() != rows.size()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("{} labels for {} feature rows", labels.size(), rows.size()));
  }
  FeatureMatrix m;
  m.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kFeatureCount));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < kFeatureCount; ++c) {
      m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r].values[c];
    }
  }
  m.labels = std::move(labels);
  for (auto name : feature_names()) {
    m.columns.push_back(fmt::format("{}.{}", source_name(source), name));
  }
  return m;
}

FeatureMatrix concatenate(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("row count mismatch: {} vs {}", a.rows(), b.rows()));
  }
  if (a.labels != b.labels) {
    throw Error(ErrorKind::invalid_argument, "label columns are not aligned");
  }
  FeatureMatrix out;
  out.values.resize(a.values.rows(), a.values.cols() + b.values.cols());
  out.values << a.values, b.values;
  out.labels = a.labels;
  out.columns = a.columns;
  out.columns.insert(out.columns.end(), b.columns.begin(), b.columns.end());
  return out;
}

FeatureMatrix fuse_and_project(const FeatureMatrix& tn, const FeatureMatrix& tsgn,
                               std::size_t target_dim) {
  auto fused = concatenate(tn, tsgn);
  if (target_dim == 0) target_dim = tn.cols();
  if (target_dim > fused.cols()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("target dimension {} exceeds fused width {}", target_dim, fused.cols()));
  }
  const auto pca = Pca::fit(fused.values, target_dim);
  FeatureMatrix out;
  out.values = pca.transform(fused.values);
  out.labels = fused.labels;
  for (std::size_t k = 0; k < target_dim; ++k) out.columns.push_back(fmt::format("pc{}", k + 1));
  return out;
}

std::string to_csv(const FeatureMatrix& m) {
  std::string out;
  for (const auto& c : m.columns) {
    out += c;
    out += ',';
  }
  out += "label\n";
  for (Eigen::Index r = 0; r < m.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.values.cols(); ++c) {
      out += fmt::format("{},", m.values(r, c));
    }
    out += m.labels[static_cast<std::size_t>(r)];
    out += '\n';
  }
  return out;
}

}  // namespace tsgn
