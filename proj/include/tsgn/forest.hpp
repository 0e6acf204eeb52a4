#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tsgn/features.hpp"

namespace tsgn {

enum class SplitFeatures { sqrt, all };

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_leaf = 1;
  SplitFeatures features_per_split = SplitFeatures::sqrt;
  std::uint64_t seed = 0;
};

/// Bagged CART trees with Gini splits. A split sends `x <= threshold` left,
/// where the threshold is an observed training value, so predictions are
/// unchanged by a strictly increasing transform of any column.
class RandomForest {
 public:
  /// `y` holds class ids in [0, n_classes). Throws `Error(invalid_argument)`
  /// on fewer than two classes present, non-finite input or a bad config.
  static RandomForest train(const Eigen::MatrixXd& x, std::span<const int> y,
                            std::size_t n_classes, const ForestConfig& config);

  /// Mean leaf class distribution across trees, argmax with ties to the
  /// lower class id.
  int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  std::vector<int> predict(const Eigen::MatrixXd& x) const;

  std::size_t n_classes() const noexcept { return n_classes_; }
  std::size_t n_trees() const noexcept { return roots_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    std::uint32_t left = 0;   // child index, or offset into leaf_values_ for leaves
    std::uint32_t right = 0;
  };

  friend class TreeBuilder;

  std::size_t n_classes_ = 0;
  std::size_t n_features_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> roots_;
  std::vector<double> leaf_values_;
};

/// A forest with string class labels, trained on a feature matrix.
struct Classifier {
  RandomForest forest;
  std::vector<std::string> classes;  // sorted; class id = position

  std::vector<std::string> predict(const FeatureMatrix& x) const;
};

Classifier train_forest(const FeatureMatrix& x, const ForestConfig& config);

/// Sorted distinct labels and the per-row class ids into that list.
std::pair<std::vector<std::string>, std::vector<int>> encode_labels(const std::vector<std::string>& labels);

}  // namespace tsgn
