#pragma once

#include <utility>
#include <vector>

#include "nleig/eigensolve.hpp"

namespace nleig {

// Leading large-n law |slope_n| ~ c * n^p from a log-log ordinary
// least-squares fit over n >= n_min.
struct PowerLawFit {
  double exponent = 0.0;     // p
  double coefficient = 0.0;  // c
  double stderr_exponent = 0.0;
  double stderr_coefficient = 0.0;
  int n_min = 1;
  int n_max = 1;
};

// Throws insufficient_data with fewer than 5 usable points, mixed_signs when
// the slopes in the window are not all nonzero with a common sign.
PowerLawFit fit_power_law(const std::vector<std::pair<int, double>>& slopes, int n_min);
PowerLawFit fit_power_law(const std::vector<EigenvalueRecord>& records, int n_min);

}  // namespace nleig
