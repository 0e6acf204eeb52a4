#pragma once

#include <span>

namespace tsgn {

/// Harmonic mean of precision and recall for `positive`; 0 when both are 0.
/// Throws `Error(invalid_argument)` on length mismatch or empty input.
double f1_score(std::span<const int> predictions, std::span<const int> truth, int positive);

/// (model - baseline) / baseline * 100. Throws unless the baseline is positive.
double percent_increase(double f1_model, double f1_baseline);

}  // namespace tsgn
