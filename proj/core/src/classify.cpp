#include "nleig/classify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail/dormand_prince.hpp"

namespace nleig {

using detail::DormandPrince;
using detail::StepResult;

namespace {

void require_classifiable(const Trajectory& traj) {
  if (traj.terminated == Termination::StepUnderflow)
    throw std::invalid_argument("classify: trajectory ended in step underflow");
}

}  // namespace

Classification classify(const Trajectory& traj, const PotentialSpec& V, double E,
                        double branch_tol) {
  require_classifiable(traj);
  Classification c;
  c.pole_count = static_cast<int>(traj.events.size());
  c.branch_distance = std::numeric_limits<double>::infinity();
  if (traj.terminated == Termination::ReachedXMax) {
    const double xt = traj.final_x();
    const double a = V(xt) - E;
    if (a > 0.0) {
      const double asym = std::sqrt(a);
      c.branch_distance = std::abs(traj.final_y() - asym) / asym;
      if (c.branch_distance < branch_tol) c.terminal = TerminalBranch::StableBranch;
    }
  }
  return c;
}

Classification classify_pole_count(const Trajectory& traj) {
  require_classifiable(traj);
  Classification c;
  c.pole_count = static_cast<int>(traj.events.size());
  c.branch_distance = std::numeric_limits<double>::quiet_NaN();
  // no asymptote formula here: reaching the window without a dive in
  // progress is the stability signal
  if (traj.terminated == Termination::ReachedXMax && traj.final_y() > -traj.config.y_fit)
    c.terminal = TerminalBranch::StableBranch;
  return c;
}

StabilityProbe stability_probe(const PotentialSpec& V, double E, double base_y0, double delta,
                               const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(std::abs(delta) > 0.0) || std::abs(delta) > 1e-3)
    throw std::invalid_argument("stability_probe: need 0 < |delta| <= 1e-3");

  const Polynomial vp = V.poly;
  // base and perturbed solutions of the same equation, advanced on the same
  // steps so their difference is resolved far below either one's own error
  auto rhs = [vp, E](double x, const std::array<double, 2>& s, std::array<double, 2>& d) {
    const double w = vp(x) - E;
    d[0] = -s[0] * s[0] + w;
    d[1] = -s[1] * s[1] + w;
  };
  DormandPrince<2, decltype(rhs)> st(rhs, cfg);
  st.reset(0.0, {base_y0, base_y0 + delta}, cfg.h_init);

  StabilityProbe probe;
  probe.delta = delta;
  probe.base_samples.push_back({0.0, base_y0, -base_y0 * base_y0 + vp(0.0) - E});
  probe.phi_samples.emplace_back(0.0, delta);

  const double floor = std::max(std::abs(delta) * 1e-6, 5.0 * cfg.atol);
  while (true) {
    const StepResult r = st.step(cfg.x_max);
    if (r == StepResult::Underflow) break;
    const double x = st.x(), yb = st.y()[0], yp = st.y()[1];
    if (yb <= -cfg.y_switch) {
      probe.base_hit_pole = true;
      break;
    }
    if (yp <= -cfg.y_switch) {
      probe.perturbed_hit_pole = true;
      break;
    }
    probe.base_samples.push_back({x, yb, st.k1()[0]});
    const double phi = yp - yb;
    if (std::abs(phi) < floor) break;  // below the resolvable difference
    probe.phi_samples.emplace_back(x, phi);
    if (r == StepResult::ReachedEnd) break;
  }

  // regime: a pole in the perturbed branch or phi -> -2Y means departure;
  // a tenfold contraction from x = 1 on means attraction
  if (probe.perturbed_hit_pole) {
    probe.regime = PerturbationRegime::UnstableDeparture;
    return probe;
  }
  double phi_at_1 = std::abs(probe.phi_samples.front().second);
  for (const auto& [x, phi] : probe.phi_samples) {
    if (x >= 1.0) {
      phi_at_1 = std::abs(phi);
      break;
    }
  }
  const auto& [x_last, phi_last] = probe.phi_samples.back();
  const double y_base_last = probe.base_samples.back().y;
  const double ratio = phi_last / (-2.0 * y_base_last);
  if (ratio > 0.8 && ratio < 1.2 && x_last > 0.5)
    probe.regime = PerturbationRegime::UnstableDeparture;
  else if (std::abs(phi_last) <= 0.1 * phi_at_1)
    probe.regime = PerturbationRegime::StableAttraction;
  else
    probe.regime = std::abs(phi_last) > phi_at_1 ? PerturbationRegime::UnstableDeparture
                                                 : PerturbationRegime::StableAttraction;
  return probe;
}

}  // namespace nleig
