#include "tsgn/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

#include "tsgn/error.hpp"
#include "tsgn/rng.hpp"

namespace tsgn {

class TreeBuilder {
 public:
  TreeBuilder(RandomForest& forest, const Eigen::MatrixXd& x, std::span<const int> y,
              const ForestConfig& config, std::uint64_t seed)
      : forest_(forest), x_(x), y_(y), config_(config), rng_(seed) {
    const auto p = static_cast<std::size_t>(x.cols());
    mtry_ = config.features_per_split == SplitFeatures::all
                ? p
                : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))));
    features_.resize(p);
    std::iota(features_.begin(), features_.end(), 0);
  }

  std::uint32_t build() {
    const auto n = static_cast<std::size_t>(x_.rows());
    std::vector<std::uint32_t> sample(n);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (auto& s : sample) s = pick(rng_);
    return grow(sample, 0, sample.size(), 0);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double score = -1.0;  // sum over sides of sum_c n_c^2 / n_side; larger is purer
  };

  std::vector<double> class_counts(const std::vector<std::uint32_t>& sample, std::size_t begin,
                                   std::size_t end) const {
    std::vector<double> counts(forest_.n_classes_, 0.0);
    for (auto i = begin; i < end; ++i) counts[static_cast<std::size_t>(y_[sample[i]])] += 1.0;
    return counts;
  }

  std::uint32_t leaf(const std::vector<double>& counts, double total) {
    auto offset = static_cast<std::uint32_t>(forest_.leaf_values_.size());
    for (double c : counts) forest_.leaf_values_.push_back(c / total);
    forest_.nodes_.push_back({-1, 0.0, offset, offset});
    return static_cast<std::uint32_t>(forest_.nodes_.size() - 1);
  }

  std::uint32_t grow(std::vector<std::uint32_t>& sample, std::size_t begin, std::size_t end,
                     std::size_t depth) {
    const auto size = end - begin;
    const auto counts = class_counts(sample, begin, end);
    const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
    const bool depth_reached = config_.max_depth != 0 && depth >= config_.max_depth;
    if (pure || depth_reached || size < 2 * config_.min_samples_leaf) {
      return leaf(counts, static_cast<double>(size));
    }

    const Split split = best_split(sample, begin, end, counts);
    if (split.feature < 0) return leaf(counts, static_cast<double>(size));

    auto mid_it = std::partition(sample.begin() + static_cast<std::ptrdiff_t>(begin),
                                 sample.begin() + static_cast<std::ptrdiff_t>(end),
                                 [&](std::uint32_t i) { return x_(i, split.feature) <= split.threshold; });
    const auto mid = static_cast<std::size_t>(mid_it - sample.begin());

    const auto index = static_cast<std::uint32_t>(forest_.nodes_.size());
    forest_.nodes_.push_back({split.feature, split.threshold, 0, 0});
    const auto left = grow(sample, begin, mid, depth + 1);
    const auto right = grow(sample, mid, end, depth + 1);
    forest_.nodes_[index].left = left;
    forest_.nodes_[index].right = right;
    return index;
  }

  Split best_split(const std::vector<std::uint32_t>& sample, std::size_t begin, std::size_t end,
                   const std::vector<double>& parent_counts) {
    const auto size = end - begin;
    const auto min_leaf = config_.min_samples_leaf;
    const auto k = forest_.n_classes_;
    Split best;

    // Visit features in random order until mtry non-constant ones were scored.
    std::size_t scored = 0;
    for (std::size_t f = 0; f < features_.size() && scored < mtry_; ++f) {
      std::uniform_int_distribution<std::size_t> pick(f, features_.size() - 1);
      std::swap(features_[f], features_[pick(rng_)]);
      const int feature = static_cast<int>(features_[f]);

      order_.assign(sample.begin() + static_cast<std::ptrdiff_t>(begin),
                    sample.begin() + static_cast<std::ptrdiff_t>(end));
      std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return x_(a, feature) < x_(b, feature);
      });
      if (x_(order_.front(), feature) == x_(order_.back(), feature)) continue;
      ++scored;

      std::vector<double> left(k, 0.0);
      std::vector<double> right = parent_counts;
      double left_sq = 0.0;
      double right_sq = 0.0;
      for (double c : right) right_sq += c * c;

      for (std::size_t i = 0; i + 1 < size; ++i) {
        const auto c = static_cast<std::size_t>(y_[order_[i]]);
        left_sq += 2.0 * left[c] + 1.0;
        right_sq -= 2.0 * right[c] - 1.0;
        left[c] += 1.0;
        right[c] -= 1.0;

        const auto n_left = i + 1;
        const auto n_right = size - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        const double here = x_(order_[i], feature);
        if (here == x_(order_[i + 1], feature)) continue;

        const double score = left_sq / static_cast<double>(n_left) + right_sq / static_cast<double>(n_right);
        if (score > best.score) best = {feature, here, score};
      }
    }
    return best;
  }

  RandomForest& forest_;
  const Eigen::MatrixXd& x_;
  std::span<const int> y_;
  const ForestConfig& config_;
  std::mt19937_64 rng_;
  std::size_t mtry_ = 1;
  std::vector<std::size_t> features_;
  std::vector<std::uint32_t> order_;
};

RandomForest RandomForest::train(const Eigen::MatrixXd& x, std::span<const int> y,
                                 std::size_t n_classes, const ForestConfig& config) {
  if (config.n_trees < 1) throw Error(ErrorKind::invalid_argument, "n_trees must be at least 1");
  if (config.min_samples_leaf < 1) {
    throw Error(ErrorKind::invalid_argument, "min_samples_leaf must be at least 1");
  }
  if (static_cast<std::size_t>(x.rows()) != y.size() || y.empty()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("{} rows for {} labels", x.rows(), y.size()));
  }
  if (x.cols() == 0) throw Error(ErrorKind::invalid_argument, "no feature columns");
  if (!x.allFinite()) throw Error(ErrorKind::invalid_argument, "non-finite feature value");
  std::set<int> present;
  for (int c : y) {
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes) {
      throw Error(ErrorKind::invalid_argument, fmt::format("class id {} out of range", c));
    }
    present.insert(c);
  }
  if (present.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "training data must contain at least two classes");
  }

  RandomForest forest;
  forest.n_classes_ = n_classes;
  forest.n_features_ = static_cast<std::size_t>(x.cols());
  for (std::size_t t = 0; t < config.n_trees; ++t) {
    TreeBuilder builder(forest, x, y, config, derive_seed(config.seed, {t}));
    forest.roots_.push_back(builder.build());
  }
  return forest;
}

int RandomForest::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  if (static_cast<std::size_t>(row.size()) != n_features_) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("model expects {} features, got {}", n_features_, row.size()));
  }
  std::vector<double> votes(n_classes_, 0.0);
  for (auto root : roots_) {
    const Node* node = &nodes_[root];
    while (node->feature >= 0) {
      node = &nodes_[row(node->feature) <= node->threshold ? node->left : node->right];
    }
    for (std::size_t c = 0; c < n_classes_; ++c) votes[c] += leaf_values_[node->left + c];
  }
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

std::vector<int> RandomForest::predict(const Eigen::MatrixXd& x) const {
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[static_cast<std::size_t>(r)] = predict_row(x.row(r));
  return out;
}

std::pair<std::vector<std::string>, std::vector<int>> encode_labels(const std::vector<std::string>& labels) {
  std::vector<std::string> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<int> ids;
  ids.reserve(labels.size());
  for (const auto& l : labels) {
    ids.push_back(static_cast<int>(std::lower_bound(classes.begin(), classes.end(), l) - classes.begin()));
  }
  return {std::move(classes), std::move(ids)};
}

Classifier train_forest(const FeatureMatrix& x, const ForestConfig& config) {
  auto [classes, ids] = encode_labels(x.labels);
  Classifier model{RandomForest::train(x.values, ids, classes.size(), config), std::move(classes)};
  return model;
}

std::vector<std::string> Classifier::predict(const FeatureMatrix& x) const {
  std::vector<std::string> out;
  out.reserve(x.rows());
  for (int id : forest.predict(x.values)) out.push_back(classes[static_cast<std::size_t>(id)]);
  return out;
}

}  // namespace tsgn
