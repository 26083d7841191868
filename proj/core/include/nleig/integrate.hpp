#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nleig/problems.hpp"

namespace nleig {

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-4;
  double h_min = 1e-14;
  double h_max = 0.1;
  // |y| magnitude at which singular handling engages: the Riccati integrator
  // swaps to u = 1/y here, and the extended integrator executes its series
  // jump after sampling down to this depth.
  double y_switch = 1e3;
  // |y| magnitude at which the cube-root series (x0, a3) is fitted. Kept well
  // below y_switch: deeper in, the free coefficient a3 falls under the
  // integration noise floor and the fit degrades the restart.
  double y_fit = 50.0;
  double x_max = 12.0;
  int max_singularities = 64;
  // restart offset past an algebraic singularity
  double jump_delta = 1e-3;
  // dense-output bound: accepted steps (hence sample gaps) never exceed this
  double max_sample_dx = 0.05;

  void validate() const;  // throws std::invalid_argument
};

enum class SingularKind { SimplePole, CubeRoot };

struct SingularEvent {
  double x0 = 0.0;
  SingularKind kind = SingularKind::SimplePole;
  std::optional<double> a3;  // cube-root series coefficient, when fitted
  double fit_residual = 0.0;
};

enum class Termination { ReachedXMax, SingularBudgetExhausted, StepUnderflow };

struct Sample {
  double x;
  double y;
  double yp;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<SingularEvent> events;
  Termination terminated = Termination::ReachedXMax;
  IntegratorConfig config;
  int order = 1;  // 1: state (y); 2: state (y, y')

  double final_x() const { return samples.back().x; }
  double final_y() const { return samples.back().y; }
  // Cubic Hermite interpolation between samples; invalid across a singularity.
  double value_at(double x) const;
};

// y' = -y^2 + V(x) - E from y(0) = y0. Simple poles are crossed by switching
// to u = 1/y (whose equation u' = 1 - (V-E) u^2 is regular at u = 0) whenever
// |y| >= y_switch, recording one SimplePole event per zero crossing of u.
Trajectory integrate_riccati(const PotentialSpec& V, double E, double y0,
                             const IntegratorConfig& cfg);

// First integral y' = -y^{n+1}/n + F(x) - E. n = 1 delegates to the Riccati
// path; n = 3 crosses cube-root singularities by series jump (only the
// equation with known series is supported).
Trajectory integrate_first_integral(const FirstIntegral& fi, double E, double y0,
                                    const IntegratorConfig& cfg);

// Second-order extended equation (n = 3 families with printed series) from
// (y(0), y'(0)) = (y0, yp0). When the solution dives through -y_fit with
// y' < 0, the local series (x0, a3) is fitted and a CubeRoot event recorded;
// integration continues to -y_switch (so the blow-up window is sampled) and
// restarts at x0 + jump_delta from the truncated series.
Trajectory integrate_extended(const ExtendedEquation& eq, double y0, double yp0,
                              const IntegratorConfig& cfg);

// Least-squares slope of log|y| vs log(x0 - x) over the approach samples with
// |y| in [y_switch/10, y_switch] before the event: -1 for simple poles, -1/3
// for cube roots. Requires at least 10 samples in the window.
double singular_exponent_fit(const Trajectory& traj, std::size_t event_index);

}  // namespace nleig
