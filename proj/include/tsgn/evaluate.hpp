#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsgn/features.hpp"
#include "tsgn/forest.hpp"

namespace tsgn {

struct EvalOptions {
  std::size_t n_repeats = 300;
  double train_fraction = 0.9;
  std::uint64_t seed = 0;
  ForestConfig forest;
  /// When non-zero, each repeat fits a PCA with this many components on its
  /// training rows and projects both sides before training.
  std::size_t pca_components = 0;
  std::string positive_label = "phishing";
  unsigned threads = 1;
  std::size_t max_split_attempts = 16;
};

struct EvalResult {
  double mean_f1 = 0.0;
  double std_f1 = 0.0;  // population standard deviation over repeats
  std::size_t n_repeats = 0;
  std::vector<double> f1;  // per repeat, in repeat order
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffle; round(train_fraction * n_c) rows of each class go to
/// training, clamped so both sides keep at least one row of a class with two
/// or more rows.
Split stratified_split(std::span<const int> classes, double train_fraction, std::mt19937_64& rng);

/// Repeated stratified hold-out evaluation. Repeat r draws its split and
/// forest seed from (seed, r) alone, so results do not depend on `threads`.
/// Throws `Error(invalid_argument)` if a split keeps missing a class after
/// `max_split_attempts` draws.
EvalResult evaluate(const FeatureMatrix& data, const EvalOptions& options);

struct ReportRow {
  std::string dataset;
  std::string variant;  // "tn" or "tn+<variant>"
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
  std::size_t n_repeats = 0;
  std::optional<double> percent_increase;  // vs the "tn" row
  std::uint64_t seed = 0;
};

struct EvalReport {
  std::vector<ReportRow> rows;

  /// One `[variant]` block of `key = value` lines per row.
  std::string to_text() const;
  std::string to_csv() const;
};

}  // namespace tsgn
