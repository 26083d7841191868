#pragma once

#include <optional>

#include "nleig/problems.hpp"

namespace nleig::cuberoot_series {

// Local expansions around a cube-root movable singularity x0 for the n = 3
// extended equations with a single forcing term:
//   ForcingX  : y'' = -(4/3) y' y^3 + a x
//   ForcingXY : y'' = -(4/3) y' y^3 + a x y
// In terms of s = cbrt(x - x0),
//   ForcingX  : y ~ 1/s + a3 s^3 + (3 a x0/10) s^6 - (6 a3^2/11) s^7
//               + (3 a/26) s^9 + O(s^10)
//   ForcingXY : y ~ 1/s + a3 s^3 + (a x0/2) s^5 - (6 a3^2/11) s^7
//               + (3 a/20) s^8 - (9 a a3 x0/26) s^9 + O(s^10)
// a3 is the free constant fixed by the initial data; a = 1 recovers the
// published expansions and a = -1 is the (x, y) -> (-x, -y) reflection used
// to integrate problems posed toward decreasing x.
enum class Family { ForcingX, ForcingXY };

struct LocalSeries {
  Family family = Family::ForcingX;
  double coefficient = 1.0;  // a
};

std::optional<LocalSeries> series_for(const ExtendedEquation& eq);
std::optional<LocalSeries> series_for_first_integral(const FirstIntegral& fi);

struct Value {
  double y = 0.0;
  double yp = 0.0;
  double ypp = 0.0;
  double dy_dx0 = 0.0;
  double dyp_dx0 = 0.0;
  double dy_da3 = 0.0;
  double dyp_da3 = 0.0;
};

// Truncated series and its partial derivatives at x (x != x0; both sides of
// the singularity use the real cube root of x - x0).
Value evaluate(const LocalSeries& series, double x, double x0, double a3);

struct FitResult {
  double x0 = 0.0;
  double a3 = 0.0;
  double residual = 0.0;  // max relative mismatch of (y, y') at convergence
  int iterations = 0;
};

// Newton solve of series(x; x0, a3) = (y, yp) for (x0, a3). Returns nullopt
// when the iteration does not reach residual < 1e-6.
std::optional<FitResult> fit(const LocalSeries& series, double x, double y, double yp);

}  // namespace nleig::cuberoot_series
