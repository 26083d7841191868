#include "nleig/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "nleig/errors.hpp"

namespace nleig {

PowerLawFit fit_power_law(const std::vector<std::pair<int, double>>& slopes, int n_min) {
  if (n_min < 1) throw std::invalid_argument("fit_power_law: n_min must be >= 1 (log n)");

  std::vector<std::pair<double, double>> pts;  // (log n, log|slope|)
  int sign = 0;
  int top = n_min;
  for (const auto& [n, s] : slopes) {
    if (n < n_min) continue;
    if (s == 0.0) throw mixed_signs("fit_power_law: zero slope at n = " + std::to_string(n));
    const int sgn = s > 0 ? 1 : -1;
    if (sign == 0) sign = sgn;
    if (sgn != sign) throw mixed_signs("fit_power_law: slopes change sign in the window");
    pts.emplace_back(std::log(static_cast<double>(n)), std::log(std::abs(s)));
    top = std::max(top, n);
  }
  const int N = static_cast<int>(pts.size());
  if (N < 5)
    throw insufficient_data("fit_power_law: " + std::to_string(N) +
                            " points with n >= n_min (need 5)");

  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= N;
  my /= N;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  const double p = sxy / sxx;
  const double intercept = my - p * mx;

  double ssr = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - (p * x + intercept);
    ssr += r * r;
  }
  const double s2 = N > 2 ? ssr / (N - 2) : 0.0;
  const double se_p = std::sqrt(s2 / sxx);
  const double se_b = std::sqrt(s2 * (1.0 / N + mx * mx / sxx));

  PowerLawFit fit;
  fit.exponent = p;
  fit.coefficient = std::exp(intercept);
  fit.stderr_exponent = se_p;
  fit.stderr_coefficient = fit.coefficient * se_b;  // delta method on exp
  fit.n_min = n_min;
  fit.n_max = top;
  return fit;
}

PowerLawFit fit_power_law(const std::vector<EigenvalueRecord>& records, int n_min) {
  std::vector<std::pair<int, double>> slopes;
  slopes.reserve(records.size());
  for (const EigenvalueRecord& r : records) slopes.emplace_back(r.index, r.slope);
  return fit_power_law(slopes, n_min);
}

}  // namespace nleig
