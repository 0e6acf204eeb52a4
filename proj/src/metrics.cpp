#include "tsgn/metrics.hpp"

#include <fmt/format.h>

#include "tsgn/error.hpp"

namespace tsgn {

double f1_score(std::span<const int> predictions, std::span<const int> truth, int positive) {
  if (predictions.size() != truth.size()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("{} predictions for {} labels", predictions.size(), truth.size()));
  }
  if (truth.empty()) throw Error(ErrorKind::invalid_argument, "F1 of an empty sample");

  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool p = predictions[i] == positive;
    const bool t = truth[i] == positive;
    tp += p && t;
    fp += p && !t;
    fn += !p && t;
  }
  const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double percent_increase(double f1_model, double f1_baseline) {
  if (!(f1_baseline > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "percent increase needs a positive baseline");
  }
  return (f1_model - f1_baseline) / f1_baseline * 100.0;
}

}  // namespace tsgn
