#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "nleig/classify.hpp"
#include "nleig/integrate.hpp"
#include "nleig/problems.hpp"

namespace nleig {

struct EigenvalueRecord {
  int index = 0;
  double slope = 0.0;  // y'_n(0)
  // F(0) - slope for first-integral-reducible families (NaN otherwise)
  double implied_energy = std::numeric_limits<double>::quiet_NaN();
  double bracket_width = 0.0;
  // pole counts at the two bracket endpoints, ordered by implied energy:
  // (index) below the eigenvalue, (index + 1) above
  int poles_below = 0;
  int poles_above = 0;
  // |slope - (V(0) - E_linear)|, filled by verify_equivalence (NaN otherwise)
  double residual = std::numeric_limits<double>::quiet_NaN();
};

// Separatrix slopes of the initial-slope problem with y(0) = 0: scans
// slope_range for pole-count increments, splits multi-jumps recursively, and
// bisects every unit bracket down to slope_tol. Records are indexed by the
// lower pole count and sorted. Accepts master, Ince (through its master form)
// and extended equations. Throws bracket_not_found when a requested level is
// not inside slope_range; an Unresolved classification inside a bracket
// triggers one automatic x_max increase before failing.
std::vector<EigenvalueRecord> nonlinear_spectrum(const EquationSpec& eq, int n_max,
                                                 std::pair<double, double> slope_range,
                                                 const IntegratorConfig& cfg, double slope_tol);

struct LinearLevel {
  int index = 0;
  double energy = 0.0;
  int nodes = 0;  // zeros of psi on (0, L); equals index
  // sign of psi(L) just below the eigenvalue (the diverging amplitude whose
  // flip marks the level)
  int outer_amplitude_sign = 0;
};

// Neumann levels of -psi'' + V psi = E psi on [0, L] by fixed-step Numerov
// sweeps (Taylor ghost start at the origin) and node-count bisection. L must
// be deep in the classically forbidden region: V(L) - E_max >= 25.
std::vector<LinearLevel> linear_spectrum(const PotentialSpec& V, int n_max, double L,
                                         int grid_points, double energy_tol);

// Node count of the Neumann solution on (0, L] at energy E (used directly by
// the oracle comparisons).
int numerov_node_count(const PotentialSpec& V, double E, double L, int grid_points);

struct LinearSolverParams {
  double L = 0.0;  // 0 = grow automatically until the window fits
  int grid_points = 40000;
  double energy_tol = 1e-10;
};

struct EquivalenceReport {
  std::vector<double> residuals;  // residuals[n] = |slope_n - (V(0) - E_n)|
  std::vector<EigenvalueRecord> nonlinear;
  std::vector<LinearLevel> linear;
  double max_residual = 0.0;
};

// The exact equivalence check: nonlinear slopes against V(0) - E_n from the
// independent Numerov solver, for any Riccati-reducible equation.
EquivalenceReport verify_equivalence(const EquationSpec& eq, int n_max,
                                     const IntegratorConfig& cfg, double slope_tol = 1e-9,
                                     LinearSolverParams lin = {});

struct ScanTransition {
  double y0_lo = 0.0;
  double y0_hi = 0.0;
  int poles_lo = 0;
  int poles_hi = 0;
};

// Initial-function problem: fixes y'(0) = fixed_slope, scans y(0) over
// y0_range on `grid` points (each trial has E = V(0) - y0^2 - fixed_slope)
// and reports every adjacent pair whose pole counts differ. An empty result
// means no eigenvalue was detected in the range.
std::vector<ScanTransition> initial_function_scan(const PotentialSpec& V,
                                                  std::pair<double, double> y0_range, int grid,
                                                  const IntegratorConfig& cfg,
                                                  double fixed_slope = 0.0);

}  // namespace nleig
