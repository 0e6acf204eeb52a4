#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace tsgn {

/// Principal component projection. Components are ordered by decreasing
/// variance and sign-normalized so their largest-magnitude loading is
/// positive, which makes fits reproducible.
class Pca {
 public:
  /// Throws `Error(invalid_argument)` if `components` exceeds the data width
  /// or `data` has no rows.
  static Pca fit(const Eigen::MatrixXd& data, std::size_t components);

  /// Centers with the fitted mean and projects; rows are samples.
  Eigen::MatrixXd transform(const Eigen::MatrixXd& data) const;

  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& components() const noexcept { return components_; }  // width x k
  const Eigen::VectorXd& explained_variance() const noexcept { return variance_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd components_;
  Eigen::VectorXd variance_;
};

}  // namespace tsgn
