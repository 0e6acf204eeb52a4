#include <gtest/gtest.h>

#include <random>

#include "tsgn/error.hpp"
#include "tsgn/features.hpp"
#include "tsgn/pca.hpp"

using namespace tsgn;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal(rng);
  }
  return m;
}

FeatureMatrix as_features(const Eigen::MatrixXd& values, const std::string& prefix) {
  FeatureMatrix m;
  m.values = values;
  m.labels.assign(static_cast<std::size_t>(values.rows()), "x");
  for (Eigen::Index c = 0; c < values.cols(); ++c) m.columns.push_back(prefix + std::to_string(c));
  return m;
}

}  // namespace

TEST(Pca, FullRankPreservesGram) {
  const auto x = random_matrix(20, 20, 1);
  const auto pca = Pca::fit(x, 20);
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd projected = pca.transform(x);
  EXPECT_LT((projected * projected.transpose() - centered * centered.transpose()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Pca, ComponentsAreOrthonormalAndOrdered) {
  const auto pca = Pca::fit(random_matrix(50, 6, 2), 4);
  const auto& w = pca.components();
  ASSERT_EQ(w.rows(), 6);
  ASSERT_EQ(w.cols(), 4);
  EXPECT_LT((w.transpose() * w - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
  const auto& v = pca.explained_variance();
  for (Eigen::Index k = 1; k < v.size(); ++k) EXPECT_GE(v(k - 1), v(k));
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    Eigen::Index at = 0;
    w.col(k).cwiseAbs().maxCoeff(&at);
    EXPECT_GT(w(at, k), 0.0);
  }
}

TEST(Pca, RejectsBadShapes) {
  EXPECT_THROW(Pca::fit(random_matrix(5, 3, 3), 4), Error);
  EXPECT_THROW(Pca::fit(Eigen::MatrixXd(0, 3), 1), Error);
}

TEST(FuseAndProject, DuplicatedBlockAddsNoRank) {
  const auto x = random_matrix(40, 5, 4);
  const auto fused = fuse_and_project(as_features(x, "a"), as_features(x, "b"));
  ASSERT_EQ(fused.cols(), 5u);
  EXPECT_EQ(fused.columns.front(), "pc1");

  // The projection keeps all the variance of [x || x]; reconstruction is exact.
  Eigen::MatrixXd both(40, 10);
  both << x, x;
  const auto pca = Pca::fit(both, 5);
  const Eigen::MatrixXd centered = both.rowwise() - both.colwise().mean();
  const Eigen::MatrixXd rebuilt = pca.transform(both) * pca.components().transpose();
  EXPECT_LT((rebuilt - centered).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((rebuilt.leftCols(5) - rebuilt.rightCols(5)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FuseAndProject, OneComponentSeparatesClusters) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.1);
  Eigen::MatrixXd a(60, 3);
  Eigen::MatrixXd b(60, 3);
  for (Eigen::Index r = 0; r < 60; ++r) {
    const double centre = r < 30 ? 0.0 : 10.0;
    for (Eigen::Index c = 0; c < 3; ++c) {
      a(r, c) = centre + noise(rng);
      b(r, c) = -centre + noise(rng);
    }
  }
  const auto projected = fuse_and_project(as_features(a, "a"), as_features(b, "b"), 1);
  const auto first = projected.values.col(0).head(30);
  const auto second = projected.values.col(0).tail(30);
  const bool separated = first.maxCoeff() < second.minCoeff() || second.maxCoeff() < first.minCoeff();
  EXPECT_TRUE(separated);
}

TEST(FuseAndProject, RejectsOversizedTarget) {
  const auto x = random_matrix(10, 2, 6);
  EXPECT_THROW(fuse_and_project(as_features(x, "a"), as_features(x, "b"), 5), Error);
}
