#include "nleig/singular_series.hpp"

#include <array>
#include <cmath>
#include <span>

namespace nleig::cuberoot_series {
namespace {

// One series term  coef * s^spow  with
// coef = (c0 + cx*x0 + ca*a3 + caa*a3^2 + cax*a3*x0) * (times_a ? a : 1).
struct Term {
  int spow;
  double c0 = 0.0, cx = 0.0, ca = 0.0, caa = 0.0, cax = 0.0;
  bool times_a = false;
};

constexpr std::array<Term, 5> kForcingX = {{
    {-1, 1.0},
    {3, 0.0, 0.0, 1.0},
    {6, 0.0, 3.0 / 10.0, 0.0, 0.0, 0.0, true},
    {7, 0.0, 0.0, 0.0, -6.0 / 11.0},
    {9, 3.0 / 26.0, 0.0, 0.0, 0.0, 0.0, true},
}};

constexpr std::array<Term, 6> kForcingXY = {{
    {-1, 1.0},
    {3, 0.0, 0.0, 1.0},
    {5, 0.0, 1.0 / 2.0, 0.0, 0.0, 0.0, true},
    {7, 0.0, 0.0, 0.0, -6.0 / 11.0},
    {8, 3.0 / 20.0, 0.0, 0.0, 0.0, 0.0, true},
    {9, 0.0, 0.0, 0.0, 0.0, -9.0 / 26.0, true},
}};

std::span<const Term> terms_of(Family fam) {
  if (fam == Family::ForcingX) return kForcingX;
  return kForcingXY;
}

// s^p for integer p of either sign (s may be negative).
double ipow(double s, int p) {
  if (p < 0) return 1.0 / ipow(s, -p);
  double acc = 1.0;
  while (p-- > 0) acc *= s;
  return acc;
}

}  // namespace

std::optional<LocalSeries> series_for(const ExtendedEquation& eq) {
  if (eq.n != 3 || eq.forcing.size() != 1) return std::nullopt;
  const ForcingTerm& t = eq.forcing.front();
  if (t.x_power != 1 || t.coefficient == 0.0) return std::nullopt;
  if (t.y_power == 0) return LocalSeries{Family::ForcingX, t.coefficient};
  if (t.y_power == 1) return LocalSeries{Family::ForcingXY, t.coefficient};
  return std::nullopt;
}

std::optional<LocalSeries> series_for_first_integral(const FirstIntegral& fi) {
  // Only the ForcingX equation reduces; its antiderivative is a x^2/2.
  if (fi.n != 3) return std::nullopt;
  const auto& c = fi.forcing_antiderivative.coefficients();
  if (c.size() == 3 && c[0] == 0.0 && c[1] == 0.0 && c[2] != 0.0)
    return LocalSeries{Family::ForcingX, 2.0 * c[2]};
  return std::nullopt;
}

Value evaluate(const LocalSeries& series, double x, double x0, double a3) {
  const double s = std::cbrt(x - x0);
  Value v;
  for (const Term& t : terms_of(series.family)) {
    const double mult = t.times_a ? series.coefficient : 1.0;
    const double coef = mult * (t.c0 + t.cx * x0 + t.ca * a3 + t.caa * a3 * a3 + t.cax * a3 * x0);
    const double dc_dx0 = mult * (t.cx + t.cax * a3);
    const double dc_da3 = mult * (t.ca + 2.0 * t.caa * a3 + t.cax * x0);
    const double p = t.spow;
    const double sp = ipow(s, t.spow);
    const double spm3 = ipow(s, t.spow - 3);
    const double spm6 = ipow(s, t.spow - 6);
    v.y += coef * sp;
    v.yp += coef * (p / 3.0) * spm3;
    v.ypp += coef * (p / 3.0) * ((p - 3.0) / 3.0) * spm6;
    v.dy_dx0 += dc_dx0 * sp;
    v.dyp_dx0 += dc_dx0 * (p / 3.0) * spm3;
    v.dy_da3 += dc_da3 * sp;
    v.dyp_da3 += dc_da3 * (p / 3.0) * spm3;
  }
  // chain rule through s(x0): ds/dx0 = -1/(3 s^2), so d(.)/dx0 gains -d(.)/dx
  v.dy_dx0 -= v.yp;
  v.dyp_dx0 -= v.ypp;
  return v;
}

std::optional<FitResult> fit(const LocalSeries& series, double x, double y, double yp) {
  if (!(y < 0.0)) return std::nullopt;  // blow-up approaches from below
  const double s_guess = 1.0 / y;
  double x0 = x - s_guess * s_guess * s_guess;
  double a3 = yp + 1.0 / (3.0 * ipow(s_guess, 4));
  const double sy = std::max(1.0, std::abs(y));
  const double sp = std::max(1.0, std::abs(yp));

  FitResult res;
  for (int it = 0; it < 60; ++it) {
    const Value v = evaluate(series, x, x0, a3);
    const double r1 = (v.y - y) / sy;
    const double r2 = (v.yp - yp) / sp;
    res = {x0, a3, std::max(std::abs(r1), std::abs(r2)), it + 1};
    if (res.residual < 1e-13) break;
    const double j11 = v.dy_dx0 / sy, j12 = v.dy_da3 / sy;
    const double j21 = v.dyp_dx0 / sp, j22 = v.dyp_da3 / sp;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    double dx0 = (r1 * j22 - r2 * j12) / det;
    double da3 = (j11 * r2 - j21 * r1) / det;
    // keep the singularity ahead of the fit point
    while (x0 - dx0 <= x && std::abs(dx0) > 0.0) dx0 *= 0.5;
    x0 -= dx0;
    a3 -= da3;
  }
  if (!(res.residual < 1e-6) || !(res.x0 > x) || !std::isfinite(res.a3)) return std::nullopt;
  return res;
}

}  // namespace nleig::cuberoot_series
