#include "tsgn/pca.hpp"

#include <fmt/format.h>

#include "tsgn/error.hpp"

namespace tsgn {

Pca Pca::fit(const Eigen::MatrixXd& data, std::size_t components) {
  const auto width = static_cast<std::size_t>(data.cols());
  if (data.rows() == 0) throw Error(ErrorKind::invalid_argument, "PCA needs at least one row");
  if (components == 0 || components > width) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("cannot keep {} components of {} columns", components, width));
  }

  Pca pca;
  pca.mean_ = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - pca.mean_.transpose();
  const double denom = data.rows() > 1 ? static_cast<double>(data.rows() - 1) : 1.0;
  const Eigen::MatrixXd covariance = (centered.transpose() * centered) / denom;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::invalid_argument, "covariance eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues.
  const auto k = static_cast<Eigen::Index>(components);
  const auto w = static_cast<Eigen::Index>(width);
  pca.components_.resize(w, k);
  pca.variance_.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::VectorXd v = solver.eigenvectors().col(w - 1 - j);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0) v = -v;
    pca.components_.col(j) = v;
    pca.variance_(j) = std::max(0.0, solver.eigenvalues()(w - 1 - j));
  }
  return pca;
}

Eigen::MatrixXd Pca::transform(const Eigen::MatrixXd& data) const {
  if (data.cols() != mean_.size()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("PCA fitted on {} columns, got {}", mean_.size(), data.cols()));
  }
  return (data.rowwise() - mean_.transpose()) * components_;
}

}  // namespace tsgn
