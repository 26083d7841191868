#include "nleig/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace nleig {

PotentialSpec ince_to_master(const Polynomial& q) {
  return {0.25 * (q * q) - 0.5 * q.derivative()};
}

double master_to_riccati(const PotentialSpec& V, double y0, double yp0) {
  return V.at_origin() - y0 * y0 - yp0;
}

SchrodingerProblem riccati_to_schrodinger(const PotentialSpec& V, double E) {
  return {V, E};
}

double FirstIntegral::constant_for(double y0, double yp0) const {
  return forcing_antiderivative.constant_term() - yp0 - std::pow(y0, n + 1) / n;
}

double FirstIntegral::rhs(double x, double y, double E) const {
  return -std::pow(y, n + 1) / n + forcing_antiderivative(x) - E;
}

std::optional<FirstIntegral> extended_first_integral(const ExtendedEquation& eq) {
  if (eq.n < 2) throw std::invalid_argument("ExtendedEquation requires n >= 2");
  Polynomial forcing;
  for (const ForcingTerm& t : eq.forcing) {
    if (t.y_power != 0) return std::nullopt;
    std::vector<double> mono(t.x_power + 1, 0.0);
    mono[t.x_power] = t.coefficient;
    forcing = forcing + Polynomial(std::move(mono));
  }
  return FirstIntegral{eq.n, forcing.antiderivative()};
}

std::optional<FirstIntegral> first_integral(const EquationSpec& eq) {
  if (const auto* m = std::get_if<MasterEquation>(&eq))
    return FirstIntegral{1, m->potential.poly};
  if (const auto* i = std::get_if<InceEquation>(&eq))
    return FirstIntegral{1, ince_to_master(i->q).poly};
  if (const auto* r = std::get_if<RiccatiEquation>(&eq))
    return FirstIntegral{1, r->potential.poly};
  return extended_first_integral(std::get<ExtendedEquation>(eq));
}

namespace {

double forcing_sum(const std::vector<ForcingTerm>& forcing, double x, double y) {
  double acc = 0.0;
  for (const ForcingTerm& t : forcing)
    acc += t.coefficient * std::pow(x, t.x_power) * std::pow(y, t.y_power);
  return acc;
}

}  // namespace

RhsEvaluator make_rhs(const EquationSpec& eq) {
  if (const auto* r = std::get_if<RiccatiEquation>(&eq)) {
    const RiccatiEquation rc = *r;
    return {1, [rc](double x, std::span<const double> s, std::span<double> d) {
              d[0] = -s[0] * s[0] + rc.potential(x) - rc.energy;
            }};
  }
  if (const auto* m = std::get_if<MasterEquation>(&eq)) {
    const Polynomial vp = m->potential.poly.derivative();
    return {2, [vp](double x, std::span<const double> s, std::span<double> d) {
              d[0] = s[1];
              d[1] = -2.0 * s[1] * s[0] + vp(x);
            }};
  }
  if (const auto* i = std::get_if<InceEquation>(&eq)) {
    const Polynomial q = i->q;
    const Polynomial qp = i->q.derivative();
    return {2, [q, qp](double x, std::span<const double> s, std::span<double> d) {
              d[0] = s[1];
              d[1] = -2.0 * s[0] * s[1] + q(x) * s[1] + qp(x) * s[0];
            }};
  }
  const ExtendedEquation ext = std::get<ExtendedEquation>(eq);
  if (ext.n < 2) throw std::invalid_argument("ExtendedEquation requires n >= 2");
  const double lead = -(ext.n + 1.0) / ext.n;
  return {2, [ext, lead](double x, std::span<const double> s, std::span<double> d) {
            double yn = 1.0;
            for (int k = 0; k < ext.n; ++k) yn *= s[0];
            d[0] = s[1];
            d[1] = lead * s[1] * yn + forcing_sum(ext.forcing, x, s[0]);
          }};
}

}  // namespace nleig
