#pragma once

namespace nleig {

// Gamma function on the real line, accurate to ~1e-13 relative for |x| <= 30.
// Throws gamma_pole_error at x = 0, -1, -2, ...
double gamma(double x);

// sin(pi*x) and cos(pi*x) with exact argument reduction to |f| <= 1/2, so the
// zeros land exactly on (half-)integers.
double sin_pi(double x);
double cos_pi(double x);

// H_{m-1}(x) / H_m(x) for physicists' Hermite polynomials, m >= 1, computed by
// the ratio recurrence r_{m+1} = 1 / (2x - 2m r_m) starting from r_1 = 1/(2x).
// Raw H_m values are never formed (they overflow near m ~ 20). At a zero of
// H_m the result diverges (signed). If guard > 0, throws divide_by_near_zero
// when |result| > 1/guard.
double hermite_ratio(int m, double x, double guard = 0.0);

// y_n(x) = -x + 4n H_{2n-1}(x)/H_{2n}(x): the closed-form separatrix solution
// of y' = -y^2 + x^2 - (4n+1). For n = 0 this is exactly -x; for n >= 1 it has
// simple poles at the n positive zeros of H_{2n}.
double exact_eigenfunction(int n, double x, double guard = 0.0);

struct OriginData {
  double y0;
  double yp0;
};

// Initial data (y(0), y'(0)) of the harmonic separatrix solution labelled by
// the real parameter nu (energy E = 2 nu + 1):
//   y(0)  = -2 Gamma(-nu/2 - 1/2) / Gamma(-nu/2),
//   y'(0) = -2 nu - 1 - y(0)^2.
// Pole cases are resolved analytically: y(0) = 0 exactly for even integer
// nu >= 0; for odd integer nu >= -1 the pair is (+/-)inf (the solution itself
// has a pole at the origin) and the Riccati identity still holds in IEEE
// arithmetic. Never throws for real nu.
OriginData riccati_initial_data(double nu);

struct ExactHarmonicSolution {
  int n;
  double nu;               // 2n
  double energy;           // 4n + 1
  double slope_at_origin;  // -4n - 1
};

ExactHarmonicSolution exact_harmonic_solution(int n);

}  // namespace nleig
