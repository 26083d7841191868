#include "nleig/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "detail/dormand_prince.hpp"
#include "nleig/errors.hpp"
#include "nleig/singular_series.hpp"

namespace nleig {

using detail::DormandPrince;
using detail::StepResult;

namespace {

// Root of the cubic Hermite interpolant of u on [xa, xb]; ua and ub must have
// opposite signs. Returns (x_root, |residual|).
std::pair<double, double> hermite_cubic_root(double xa, double ua, double upa, double xb,
                                             double ub, double upb) {
  const double dx = xb - xa;
  auto H = [&](double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ua + (t3 - 2 * t2 + t) * dx * upa + (-2 * t3 + 3 * t2) * ub +
           (t3 - t2) * dx * upb;
  };
  double lo = 0.0, hi = 1.0;
  double flo = ua;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = H(mid);
    if (fm == 0.0) return {xa + mid * dx, 0.0};
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  return {xa + t * dx, std::abs(H(t))};
}

// Appends an event; returns false when the singular budget is exhausted.
bool record_event(Trajectory& traj, SingularEvent ev) {
  traj.events.push_back(ev);
  return static_cast<int>(traj.events.size()) < traj.config.max_singularities;
}

}  // namespace

void IntegratorConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("IntegratorConfig: " + what);
  };
  if (!(rtol > 0.0)) fail("rtol must be > 0");
  if (!(atol > 0.0)) fail("atol must be > 0");
  if (!(h_min >= 0.0 && h_min < h_init && h_init < h_max)) fail("need 0 <= h_min < h_init < h_max");
  if (!(y_switch >= 10.0)) fail("y_switch must be >= 10");
  if (!(y_fit >= 10.0)) fail("y_fit must be >= 10");
  if (!(jump_delta > 0.0)) fail("jump_delta must be > 0");
  if (!(x_max > 0.0)) fail("x_max must be > 0");
  if (max_singularities < 1) fail("max_singularities must be >= 1");
  if (!(max_sample_dx > 0.0)) fail("max_sample_dx must be > 0");
}

double Trajectory::value_at(double x) const {
  if (samples.empty() || x < samples.front().x || x > samples.back().x)
    throw std::invalid_argument("Trajectory::value_at: x outside sampled range");
  auto it = std::lower_bound(samples.begin(), samples.end(), x,
                             [](const Sample& s, double v) { return s.x < v; });
  if (it->x == x) return it->y;
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  const double dx = b.x - a.x;
  const double t = (x - a.x) / dx;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a.y + (t3 - 2 * t2 + t) * dx * a.yp + (-2 * t3 + 3 * t2) * b.y +
         (t3 - t2) * dx * b.yp;
}

Trajectory integrate_riccati(const PotentialSpec& V, double E, double y0,
                             const IntegratorConfig& cfg) {
  cfg.validate();
  const Polynomial vp = V.poly;
  auto fy = [vp, E](double x, const std::array<double, 1>& y, std::array<double, 1>& d) {
    d[0] = -y[0] * y[0] + vp(x) - E;
  };
  auto fu = [vp, E](double x, const std::array<double, 1>& u, std::array<double, 1>& d) {
    d[0] = 1.0 - (vp(x) - E) * u[0] * u[0];
  };
  DormandPrince<1, decltype(fy)> sy(fy, cfg);
  DormandPrince<1, decltype(fu)> su(fu, cfg);

  Trajectory traj;
  traj.config = cfg;
  traj.order = 1;
  traj.samples.push_back({0.0, y0, -y0 * y0 + vp(0.0) - E});

  bool uphase = std::abs(y0) >= cfg.y_switch;
  if (uphase)
    su.reset(0.0, {1.0 / y0}, cfg.h_init);
  else
    sy.reset(0.0, {y0}, cfg.h_init);

  // previous accepted u-phase point, for pole-crossing detection
  double xa = 0.0, ua = 0.0, upa = 0.0;
  if (uphase) {
    ua = 1.0 / y0;
    upa = 1.0 - (vp(0.0) - E) * ua * ua;
  }

  while (true) {
    if (!uphase) {
      const StepResult r = sy.step(cfg.x_max);
      if (r == StepResult::Underflow) {
        traj.terminated = Termination::StepUnderflow;
        break;
      }
      const double x = sy.x(), y = sy.y()[0], yp = sy.k1()[0];
      traj.samples.push_back({x, y, yp});
      if (r == StepResult::ReachedEnd) {
        traj.terminated = Termination::ReachedXMax;
        break;
      }
      if (std::abs(y) >= cfg.y_switch) {
        uphase = true;
        xa = x;
        ua = 1.0 / y;
        upa = 1.0 - (vp(x) - E) * ua * ua;
        su.reset(x, {ua}, sy.h());
      }
    } else {
      const StepResult r = su.step(cfg.x_max);
      if (r == StepResult::Underflow) {
        traj.terminated = Termination::StepUnderflow;
        break;
      }
      const double xb = su.x(), ub = su.y()[0], upb = su.k1()[0];
      if ((ua < 0) != (ub < 0) || ub == 0.0) {
        const auto [x0, resid] = hermite_cubic_root(xa, ua, upa, xb, ub, upb);
        if (!record_event(traj, {x0, SingularKind::SimplePole, std::nullopt, resid})) {
          traj.terminated = Termination::SingularBudgetExhausted;
          break;
        }
      }
      if (ub != 0.0) traj.samples.push_back({xb, 1.0 / ub, -upb / (ub * ub)});
      if (r == StepResult::ReachedEnd) {
        traj.terminated = Termination::ReachedXMax;
        break;
      }
      xa = xb;
      ua = ub;
      upa = upb;
      if (std::abs(ub) * cfg.y_switch > 1.0 + 1e-9) {
        uphase = false;
        sy.reset(xb, {1.0 / ub}, su.h());
      }
    }
  }
  return traj;
}

namespace {

// Shared dive-and-jump loop for the cube-root families. The series (x0, a3)
// is fitted at the first crossing of -y_fit (where a3 is still above the
// integration noise floor), the trajectory keeps sampling down to -y_switch
// so the blow-up window is recorded, then restarts at x0 + jump_delta.
template <int N, class Stepper, class Deriv, class Restart>
Trajectory cuberoot_run(Stepper& st, Deriv deriv, Restart restart_state,
                        std::optional<cuberoot_series::LocalSeries> fam,
                        const IntegratorConfig& cfg, int order, double y0, double yp0) {
  Trajectory traj;
  traj.config = cfg;
  traj.order = order;
  traj.samples.push_back({0.0, y0, yp0});

  std::optional<cuberoot_series::FitResult> armed;
  bool done = false;
  while (!done) {
    const double x = st.x();
    const double y = st.y()[0];
    const double v = deriv(x, st.y());
    if (!armed && y < -cfg.y_fit && v < 0.0) {
      if (!fam) throw series_fit_failure("no local singular series is known for this forcing");
      const auto f = cuberoot_series::fit(*fam, x, y, v);
      if (!f)
        throw series_fit_failure("series fit failed near x = " + std::to_string(x) +
                                 " (y_fit too small or step too coarse)");
      armed = f;
      if (f->x0 <= cfg.x_max) {
        if (!record_event(traj, {f->x0, SingularKind::CubeRoot, f->a3, f->residual})) {
          traj.terminated = Termination::SingularBudgetExhausted;
          break;
        }
      }
    }
    if (armed && y <= -cfg.y_switch) {
      const double xr = armed->x0 + cfg.jump_delta;
      if (xr >= cfg.x_max) {
        traj.terminated = Termination::ReachedXMax;
        break;
      }
      const auto val = cuberoot_series::evaluate(*fam, xr, armed->x0, armed->a3);
      st.reset(xr, restart_state(val), std::min(cfg.h_init, 0.1 * cfg.jump_delta));
      traj.samples.push_back({xr, val.y, val.yp});
      armed.reset();
      continue;
    }
    switch (st.step(cfg.x_max)) {
      case StepResult::Underflow:
        traj.terminated = Termination::StepUnderflow;
        done = true;
        break;
      case StepResult::ReachedEnd:
        traj.samples.push_back({st.x(), st.y()[0], deriv(st.x(), st.y())});
        traj.terminated = Termination::ReachedXMax;
        done = true;
        break;
      case StepResult::Ok:
        traj.samples.push_back({st.x(), st.y()[0], deriv(st.x(), st.y())});
        break;
    }
  }
  return traj;
}

}  // namespace

Trajectory integrate_extended(const ExtendedEquation& eq, double y0, double yp0,
                              const IntegratorConfig& cfg) {
  cfg.validate();
  if (eq.n != 3)
    throw std::invalid_argument("integrate_extended: only n = 3 families have known series");
  const auto fam = cuberoot_series::series_for(eq);
  const std::vector<ForcingTerm> forcing = eq.forcing;
  auto rhs = [forcing](double x, const std::array<double, 2>& s, std::array<double, 2>& d) {
    double acc = 0.0;
    for (const ForcingTerm& t : forcing) {
      double term = t.coefficient;
      for (int k = 0; k < t.x_power; ++k) term *= x;
      for (int k = 0; k < t.y_power; ++k) term *= s[0];
      acc += term;
    }
    d[0] = s[1];
    d[1] = -(4.0 / 3.0) * s[1] * s[0] * s[0] * s[0] + acc;
  };
  DormandPrince<2, decltype(rhs)> st(rhs, cfg);
  st.reset(0.0, {y0, yp0}, cfg.h_init);
  auto deriv = [](double, const std::array<double, 2>& s) { return s[1]; };
  auto restart = [](const cuberoot_series::Value& v) { return std::array<double, 2>{v.y, v.yp}; };
  return cuberoot_run<2>(st, deriv, restart, fam, cfg, 2, y0, yp0);
}

Trajectory integrate_first_integral(const FirstIntegral& fi, double E, double y0,
                                    const IntegratorConfig& cfg) {
  if (fi.n == 1) return integrate_riccati({fi.forcing_antiderivative}, E, y0, cfg);
  cfg.validate();
  if (fi.n != 3)
    throw std::invalid_argument("integrate_first_integral: only n = 1 and n = 3 are supported");
  const auto fam = cuberoot_series::series_for_first_integral(fi);
  const Polynomial F = fi.forcing_antiderivative;
  // n = 3: y' = -y^4/3 + F(x) - E
  auto rhs = [F, E](double x, const std::array<double, 1>& s, std::array<double, 1>& d) {
    const double y2 = s[0] * s[0];
    d[0] = -y2 * y2 / 3.0 + F(x) - E;
  };
  DormandPrince<1, decltype(rhs)> st(rhs, cfg);
  st.reset(0.0, {y0}, cfg.h_init);
  auto deriv = [F, E](double x, const std::array<double, 1>& s) {
    const double y2 = s[0] * s[0];
    return -y2 * y2 / 3.0 + F(x) - E;
  };
  auto restart = [](const cuberoot_series::Value& v) { return std::array<double, 1>{v.y}; };
  return cuberoot_run<1>(st, deriv, restart, fam, cfg, 1, y0, deriv(0.0, {y0}));
}

double singular_exponent_fit(const Trajectory& traj, std::size_t event_index) {
  if (event_index >= traj.events.size())
    throw std::invalid_argument("singular_exponent_fit: no such event");
  const double x0 = traj.events[event_index].x0;
  const double hi = traj.config.y_switch;
  const double lo = hi / 10.0;

  // Walk backward from the event through the approach run: skip samples
  // deeper than the window, collect inside it, stop below it.
  std::vector<std::pair<double, double>> pts;  // (log(x0-x), log|y|)
  bool in_window = false;
  for (std::size_t i = traj.samples.size(); i-- > 0;) {
    const Sample& s = traj.samples[i];
    if (!(s.x < x0)) continue;
    const double ay = std::abs(s.y);
    if (ay > hi) {
      if (in_window) break;
      continue;
    }
    if (ay < lo) break;
    in_window = true;
    pts.emplace_back(std::log(x0 - s.x), std::log(ay));
  }
  if (pts.size() < 10)
    throw insufficient_samples("singular_exponent_fit: " + std::to_string(pts.size()) +
                               " samples in the fit window (need 10)");
  double mx = 0, my = 0;
  for (const auto& [px, py] : pts) {
    mx += px;
    my += py;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0, sxy = 0;
  for (const auto& [px, py] : pts) {
    sxx += (px - mx) * (px - mx);
    sxy += (px - mx) * (py - my);
  }
  return sxy / sxx;
}

}  // namespace nleig
