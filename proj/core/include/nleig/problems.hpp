#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "nleig/polynomial.hpp"

namespace nleig {

// Polynomial potential of the Riccati/Schrodinger pair. The solvers require a
// confining potential (degree >= 1, positive leading coefficient); that is
// checked at solver entry rather than at construction because the Ince
// transformation legitimately produces V = 0 for q = 0.
struct PotentialSpec {
  Polynomial poly;

  double operator()(double x) const { return poly(x); }
  double at_origin() const { return poly.constant_term(); }
  bool confining() const { return poly.degree() >= 1 && poly.leading_coefficient() > 0.0; }
};

// W'' = -2 W W' + q W' + q' W
struct InceEquation {
  Polynomial q;
};

// y'' = -2 y' y + V'(x)
struct MasterEquation {
  PotentialSpec potential;
};

// y' = -y^2 + V(x) - E
struct RiccatiEquation {
  PotentialSpec potential;
  double energy = 0.0;
};

// One term  a * x^m * y^k  on the right-hand side of an extended equation.
struct ForcingTerm {
  int x_power = 0;
  int y_power = 0;
  double coefficient = 0.0;
};

// y'' = -((n+1)/n) y' y^n + sum a_mk x^m y^k,  n >= 2.
struct ExtendedEquation {
  int n = 3;
  std::vector<ForcingTerm> forcing;
};

using EquationSpec = std::variant<InceEquation, MasterEquation, RiccatiEquation, ExtendedEquation>;

// V = q^2/4 - q'/2 with the integration constant fixed to zero, so that
// V' = q'q/2 - q''/2 identically. A constant shift of V only shifts E.
PotentialSpec ince_to_master(const Polynomial& q);

// Integration constant of the first integral through (y(0), y'(0)):
// E = V(0) - y0^2 - yp0.
double master_to_riccati(const PotentialSpec& V, double y0, double yp0);

// -psi'' + V psi = E psi on [0, inf), psi'(0) = 0, decaying at infinity
// (the growing asymptotic amplitude must vanish).
struct SchrodingerProblem {
  PotentialSpec potential;
  double energy = 0.0;
};

SchrodingerProblem riccati_to_schrodinger(const PotentialSpec& V, double E);

// First integral  y' = -y^{n+1}/n + F(x) - E  of a semi-transcendental
// second-order equation; F is the antiderivative of the x-only forcing.
struct FirstIntegral {
  int n = 1;
  Polynomial forcing_antiderivative;

  // E through given initial data: E = F(0) - yp0 - y0^{n+1}/n.
  double constant_for(double y0, double yp0) const;
  // Right-hand side at fixed E.
  double rhs(double x, double y, double E) const;
};

// Defined only when every forcing term is independent of y (k = 0).
std::optional<FirstIntegral> extended_first_integral(const ExtendedEquation& eq);

// Master equations always reduce (n = 1, F = V); Riccati is already first
// order; extended equations reduce iff all forcing has k = 0; Ince reduces
// through the master form.
std::optional<FirstIntegral> first_integral(const EquationSpec& eq);

// Type-erased right-hand-side view of an equation. State layout: (y) for
// first-order families, (y, y') for second-order ones.
struct RhsEvaluator {
  int order = 1;
  std::function<void(double, std::span<const double>, std::span<double>)> eval;
};

RhsEvaluator make_rhs(const EquationSpec& eq);

}  // namespace nleig
