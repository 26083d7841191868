#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "common/reference_tables.hpp"
#include "nleig/asymptotics.hpp"
#include "nleig/errors.hpp"

using namespace nleig;

namespace {

std::vector<std::pair<int, double>> indexed(const auto& table) {
  std::vector<std::pair<int, double>> out;
  for (std::size_t n = 0; n < table.size(); ++n) out.emplace_back(static_cast<int>(n), table[n]);
  return out;
}

}  // namespace

TEST_CASE("power-law fit is exact on exact log-linear data") {
  std::vector<std::pair<int, double>> data;
  for (int n = 1; n <= 20; ++n) data.emplace_back(n, -3.0 * std::sqrt(n));
  const PowerLawFit fit = fit_power_law(data, 1);
  CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.coefficient == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.stderr_exponent < 1e-12);
  CHECK(fit.n_min == 1);
  CHECK(fit.n_max == 20);
}

TEST_CASE("power-law fit on the first cube-root table (n >= 15)") {
  // expected values computed independently (numpy OLS on the same numbers)
  const PowerLawFit fit = fit_power_law(indexed(reference::kCubeRootXSlopes), 15);
  CHECK(fit.exponent == doctest::Approx(0.7860885403755861).epsilon(1e-9));
  CHECK(fit.coefficient == doctest::Approx(2.4606038829657977).epsilon(1e-9));
  CHECK(fit.stderr_exponent == doctest::Approx(0.0003273553709434186).epsilon(1e-6));
  CHECK(fit.stderr_coefficient == doctest::Approx(0.002406231989106565).epsilon(1e-6));
  // the exponent sits within 0.05 of the asymptotic 4/5
  CHECK(std::abs(fit.exponent - 0.8) < 0.05);
}

TEST_CASE("power-law fit on the second cube-root table (n >= 8)") {
  const PowerLawFit fit = fit_power_law(indexed(reference::kCubeRootXYSlopes), 8);
  CHECK(fit.exponent == doctest::Approx(0.4227020803064778).epsilon(1e-9));
  CHECK(fit.coefficient == doctest::Approx(1.0435075303894406).epsilon(1e-9));
  // within 0.05 of the asymptotic 4/9
  CHECK(std::abs(fit.exponent - 4.0 / 9.0) < 0.05);
}

TEST_CASE("fit residuals shrink as the window moves into the asymptotic regime") {
  auto rms = [](const PowerLawFit& fit, const auto& table, int n_min) {
    double ssr = 0.0;
    int count = 0;
    for (std::size_t n = n_min; n < table.size(); ++n) {
      const double r = std::log(std::abs(table[n])) -
                       (fit.exponent * std::log(double(n)) + std::log(fit.coefficient));
      ssr += r * r;
      ++count;
    }
    return std::sqrt(ssr / count);
  };
  const auto& t2 = reference::kCubeRootXSlopes;
  double prev = 1e9;
  for (int n_min : {8, 12, 15, 18}) {
    const double r = rms(fit_power_law(indexed(t2), n_min), t2, n_min);
    CAPTURE(n_min);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("index shift changes the fit consistently with its own uncertainty") {
  std::vector<std::pair<int, double>> shifted;
  for (int n = 1; n <= 20; ++n) shifted.emplace_back(n + 1, -3.0 * std::sqrt(n));
  const PowerLawFit fit = fit_power_law(shifted, 1);
  // frozen numpy values for the same regression
  CHECK(fit.exponent == doctest::Approx(0.6068209359728352).epsilon(1e-9));
  CHECK(fit.coefficient == doctest::Approx(2.181737946034971).epsilon(1e-9));
  const double dp = std::abs(fit.exponent - 0.5);
  CHECK(dp < 0.12);
  CHECK(dp <= 12.0 * fit.stderr_exponent);
}

TEST_CASE("power-law fit input validation") {
  std::vector<std::pair<int, double>> few = {{1, -1.0}, {2, -2.0}, {3, -3.0}, {4, -4.0}};
  CHECK_THROWS_AS(fit_power_law(few, 1), insufficient_data);
  std::vector<std::pair<int, double>> mixed = {{1, -1.0}, {2, 2.0}, {3, -3.0},
                                               {4, -4.0}, {5, -5.0}, {6, -6.0}};
  CHECK_THROWS_AS(fit_power_law(mixed, 1), mixed_signs);
  std::vector<std::pair<int, double>> zero = {{1, -1.0}, {2, 0.0}, {3, -3.0},
                                              {4, -4.0}, {5, -5.0}, {6, -6.0}};
  CHECK_THROWS_AS(fit_power_law(zero, 1), mixed_signs);
  CHECK_THROWS_AS(fit_power_law(few, 0), std::invalid_argument);

  std::vector<EigenvalueRecord> recs(6);
  for (int n = 0; n < 6; ++n) {
    recs[n].index = n + 1;
    recs[n].slope = -2.0 * (n + 1.0);
  }
  CHECK_NOTHROW(fit_power_law(recs, 1));
}
