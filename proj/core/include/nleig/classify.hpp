#pragma once

#include <utility>
#include <vector>

#include "nleig/integrate.hpp"
#include "nleig/problems.hpp"

namespace nleig {

enum class TerminalBranch { StableBranch, Unresolved };

struct Classification {
  int pole_count = 0;
  TerminalBranch terminal = TerminalBranch::Unresolved;
  // |y(x_max) - sqrt(V(x_max)-E)| / sqrt(V(x_max)-E); inf when undefined.
  double branch_distance = 0.0;
};

// Pole count plus a relative-distance test against the attracting asymptote
// +sqrt(V - E). Unresolved is a valid outcome (the separatrix itself need not
// classify). Requires a trajectory terminated by ReachedXMax or
// SingularBudgetExhausted.
Classification classify(const Trajectory& traj, const PotentialSpec& V, double E,
                        double branch_tol = 1e-2);

// Family-agnostic variant for equations without an explicit (V, E) pair:
// pole count plus reached-the-window as the stability signal.
Classification classify_pole_count(const Trajectory& traj);

enum class PerturbationRegime { StableAttraction, UnstableDeparture };

struct StabilityProbe {
  double delta = 0.0;
  std::vector<Sample> base_samples;                    // (x, Y, Y')
  std::vector<std::pair<double, double>> phi_samples;  // (x, perturbed - base)
  PerturbationRegime regime = PerturbationRegime::StableAttraction;
  bool perturbed_hit_pole = false;
  bool base_hit_pole = false;
};

// Integrates the base and perturbed Riccati solutions jointly (same steps, so
// the difference phi is resolved far below either solution's own error) and
// classifies the perturbation fate: decay onto the base (stable attraction)
// or growth toward -2Y / a pole (unstable departure). Sampling stops once
// |phi| falls below the resolvable floor max(|delta| * 1e-6, 5 * atol).
StabilityProbe stability_probe(const PotentialSpec& V, double E, double base_y0, double delta,
                               const IntegratorConfig& cfg);

}  // namespace nleig
