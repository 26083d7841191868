#include "nleig/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "nleig/errors.hpp"

namespace nleig {
namespace {

void require_confining(const PotentialSpec& V, const char* who) {
  if (!V.confining())
    throw std::invalid_argument(std::string(who) +
                                ": potential must have degree >= 1 and positive leading coefficient");
}

// ---------------------------------------------------------------------------
// Numerov machinery

// Taylor coefficients of the Neumann solution (psi(0)=1, psi'(0)=0) of
// psi'' = (V - E) psi, evaluated at x = h. Exact recurrence on polynomial
// coefficients, carried to x^10.
double neumann_taylor_start(const Polynomial& v, double E, double h) {
  std::vector<double> u = v.coefficients();
  if (u.empty()) u.push_back(0.0);
  u[0] -= E;
  constexpr int kOrder = 10;
  std::vector<double> p(kOrder + 1, 0.0);
  p[0] = 1.0;
  p[1] = 0.0;
  for (int j = 0; j + 2 <= kOrder; ++j) {
    double s = 0.0;
    for (int i = 0; i <= j && i < static_cast<int>(u.size()); ++i) s += u[i] * p[j - i];
    p[j + 2] = s / ((j + 2.0) * (j + 1.0));
  }
  double acc = 0.0;
  for (int j = kOrder; j >= 0; --j) acc = acc * h + p[j];
  return acc;
}

struct SweepResult {
  int nodes = 0;
  int end_sign = 0;
};

SweepResult numerov_sweep(const Polynomial& v, double E, double L, int grid_points) {
  const double h = L / grid_points;
  const double w = h * h / 12.0;
  double psi_prev = 1.0;
  double psi = neumann_taylor_start(v, E, h);
  double u_prev = v(0.0) - E;
  double u = v(h) - E;
  int nodes = (psi_prev > 0) != (psi > 0) ? 1 : 0;
  for (int j = 1; j < grid_points; ++j) {
    const double u_next = v((j + 1) * h) - E;
    const double psi_next =
        (2.0 * psi * (1.0 + 5.0 * w * u) - psi_prev * (1.0 - w * u_prev)) / (1.0 - w * u_next);
    if ((psi_next < 0.0) != (psi < 0.0)) ++nodes;
    psi_prev = psi;
    psi = psi_next;
    u_prev = u;
    u = u_next;
    // renormalize deep in the forbidden region to dodge overflow
    if (std::abs(psi) > 1e250) {
      const double s = 1.0 / std::abs(psi);
      psi *= s;
      psi_prev *= s;
    }
  }
  return {nodes, psi >= 0.0 ? 1 : -1};
}

double potential_min(const Polynomial& v, double L) {
  double m = v(0.0);
  for (int i = 1; i <= 2000; ++i) m = std::min(m, v(L * i / 2000.0));
  return m;
}

// ---------------------------------------------------------------------------
// slope classification for the shooting scan

// Returns the pole count for one trial slope, retrying once with a larger
// window when the classification stays Unresolved.
int classified_pole_count(const std::function<Trajectory(const IntegratorConfig&)>& run,
                          const std::function<Classification(const Trajectory&)>& classify_fn,
                          const IntegratorConfig& cfg) {
  IntegratorConfig c = cfg;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Trajectory traj = run(c);
    const Classification cls = classify_fn(traj);
    if (traj.terminated == Termination::SingularBudgetExhausted) return cls.pole_count;
    if (cls.terminal == TerminalBranch::StableBranch) return cls.pole_count;
    c.x_max *= 1.5;
  }
  throw unresolved_classification("classification unresolved after automatic x_max increase");
}

struct SlopeProblem {
  // pole count of the trial trajectory started from y(0) = 0 with the given slope
  std::function<int(double)> count;
  bool reducible = false;
  double f_at_origin = 0.0;  // F(0) of the first integral, when reducible
};

SlopeProblem make_slope_problem(const EquationSpec& eq, const IntegratorConfig& cfg) {
  SlopeProblem sp;
  if (std::holds_alternative<MasterEquation>(eq) || std::holds_alternative<InceEquation>(eq)) {
    const PotentialSpec V = std::holds_alternative<MasterEquation>(eq)
                                ? std::get<MasterEquation>(eq).potential
                                : ince_to_master(std::get<InceEquation>(eq).q);
    require_confining(V, "nonlinear_spectrum");
    sp.reducible = true;
    sp.f_at_origin = V.at_origin();
    sp.count = [V, cfg](double slope) {
      const double E = master_to_riccati(V, 0.0, slope);
      return classified_pole_count(
          [&](const IntegratorConfig& c) { return integrate_riccati(V, E, 0.0, c); },
          [&](const Trajectory& t) { return classify(t, V, E); }, cfg);
    };
    return sp;
  }
  if (std::holds_alternative<ExtendedEquation>(eq)) {
    const ExtendedEquation ext = std::get<ExtendedEquation>(eq);
    const auto fi = extended_first_integral(ext);
    sp.reducible = fi.has_value();
    sp.f_at_origin = fi ? fi->forcing_antiderivative.constant_term() : 0.0;
    sp.count = [ext, cfg](double slope) {
      return classified_pole_count(
          [&](const IntegratorConfig& c) { return integrate_extended(ext, 0.0, slope, c); },
          [&](const Trajectory& t) { return classify_pole_count(t); }, cfg);
    };
    return sp;
  }
  throw std::invalid_argument(
      "nonlinear_spectrum: the Riccati family has no free initial slope (E is fixed)");
}

}  // namespace

int numerov_node_count(const PotentialSpec& V, double E, double L, int grid_points) {
  require_confining(V, "numerov_node_count");
  if (!(L > 0.0) || grid_points < 16)
    throw std::invalid_argument("numerov_node_count: need L > 0 and grid_points >= 16");
  return numerov_sweep(V.poly, E, L, grid_points).nodes;
}

std::vector<LinearLevel> linear_spectrum(const PotentialSpec& V, int n_max, double L,
                                         int grid_points, double energy_tol) {
  require_confining(V, "linear_spectrum");
  if (!(L > 0.0) || grid_points < 16 || n_max < 0 || !(energy_tol > 0.0))
    throw std::invalid_argument("linear_spectrum: bad parameters");
  const Polynomial& v = V.poly;

  const double vmin = potential_min(v, L);
  const double e_floor = vmin - 1.0;
  double e_top = std::max(v(0.0), vmin) + 1.0;
  while (numerov_sweep(v, e_top, L, grid_points).nodes < n_max + 1) {
    e_top = vmin + 2.0 * (e_top - vmin);
    if (v(L) - e_top < 25.0)
      throw domain_too_small("linear_spectrum: fewer than n_max+1 nodes fit below V(L) - 25; "
                             "increase L");
  }

  std::vector<LinearLevel> levels;
  levels.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    double lo = e_floor, hi = e_top;
    while (hi - lo > energy_tol) {
      const double mid = 0.5 * (lo + hi);
      if (numerov_sweep(v, mid, L, grid_points).nodes >= n + 1)
        hi = mid;
      else
        lo = mid;
    }
    const SweepResult below = numerov_sweep(v, lo, L, grid_points);
    levels.push_back({n, 0.5 * (lo + hi), below.nodes, below.end_sign});
  }
  if (v(L) - levels.back().energy < 25.0)
    throw domain_too_small("linear_spectrum: V(L) - E_max < 25; increase L");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i].energy > levels[i - 1].energy))
      throw std::runtime_error("linear_spectrum: energies not strictly increasing");
  return levels;
}

std::vector<EigenvalueRecord> nonlinear_spectrum(const EquationSpec& eq, int n_max,
                                                 std::pair<double, double> slope_range,
                                                 const IntegratorConfig& cfg, double slope_tol) {
  cfg.validate();
  if (n_max < 0 || !(slope_tol > 0.0))
    throw std::invalid_argument("nonlinear_spectrum: bad n_max or slope_tol");
  SlopeProblem sp = make_slope_problem(eq, cfg);

  const double hi = std::max(slope_range.first, slope_range.second);
  const double lo = std::min(slope_range.first, slope_range.second);
  if (!(hi > lo)) throw std::invalid_argument("nonlinear_spectrum: empty slope_range");

  // coarse scan, descending slope; counts are nondecreasing as the slope drops
  const int m = std::max(4 * (n_max + 2), 16);
  std::vector<std::pair<double, int>> pts;
  pts.reserve(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double s = hi + (lo - hi) * i / m;
    pts.emplace_back(s, sp.count(s));
  }

  // split multi-jumps until every bracket carries a unit increment
  struct Bracket {
    double s_hi, s_lo;  // s_hi is the less-negative endpoint
    int c_hi, c_lo;
  };
  std::vector<Bracket> unit;
  std::vector<Bracket> work;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1].second > pts[i].second)
      work.push_back({pts[i].first, pts[i + 1].first, pts[i].second, pts[i + 1].second});
  while (!work.empty()) {
    Bracket b = work.back();
    work.pop_back();
    if (b.c_lo - b.c_hi == 1) {
      unit.push_back(b);
      continue;
    }
    if (b.s_hi - b.s_lo <= slope_tol) {
      // unseparable cluster: emit the lowest transition only
      unit.push_back({b.s_hi, b.s_lo, b.c_hi, b.c_hi + 1});
      continue;
    }
    const double mid = 0.5 * (b.s_hi + b.s_lo);
    const int cm = sp.count(mid);
    if (cm > b.c_hi) work.push_back({b.s_hi, mid, b.c_hi, cm});
    if (b.c_lo > cm) work.push_back({mid, b.s_lo, cm, b.c_lo});
  }

  // bisect each unit bracket to slope_tol
  std::map<int, EigenvalueRecord> by_index;
  for (const Bracket& b : unit) {
    const int n = b.c_hi;
    if (n > n_max) continue;
    double s_hi = b.s_hi, s_lo = b.s_lo;
    while (s_hi - s_lo > slope_tol) {
      const double mid = 0.5 * (s_hi + s_lo);
      if (sp.count(mid) <= n)
        s_hi = mid;
      else
        s_lo = mid;
    }
    EigenvalueRecord rec;
    rec.index = n;
    rec.slope = 0.5 * (s_hi + s_lo);
    rec.bracket_width = s_hi - s_lo;
    rec.poles_below = n;
    rec.poles_above = n + 1;
    if (sp.reducible) rec.implied_energy = sp.f_at_origin - rec.slope;
    by_index.emplace(n, rec);  // keep the first (least negative) per index
  }

  std::vector<EigenvalueRecord> records;
  for (int n = 0; n <= n_max; ++n) {
    auto it = by_index.find(n);
    if (it == by_index.end())
      throw bracket_not_found(n, "nonlinear_spectrum: level " + std::to_string(n) +
                                     " not bracketed by slope_range");
    records.push_back(it->second);
  }
  return records;
}

EquivalenceReport verify_equivalence(const EquationSpec& eq, int n_max,
                                     const IntegratorConfig& cfg, double slope_tol,
                                     LinearSolverParams lin) {
  PotentialSpec V;
  if (std::holds_alternative<MasterEquation>(eq))
    V = std::get<MasterEquation>(eq).potential;
  else if (std::holds_alternative<InceEquation>(eq))
    V = ince_to_master(std::get<InceEquation>(eq).q);
  else if (std::holds_alternative<RiccatiEquation>(eq))
    V = std::get<RiccatiEquation>(eq).potential;
  else
    throw std::invalid_argument("verify_equivalence: needs a Riccati-reducible family");
  require_confining(V, "verify_equivalence");

  EquivalenceReport rep;
  if (lin.L > 0.0) {
    rep.linear = linear_spectrum(V, n_max, lin.L, lin.grid_points, lin.energy_tol);
  } else {
    double L = 6.0;
    while (true) {
      try {
        rep.linear = linear_spectrum(V, n_max, L, lin.grid_points, lin.energy_tol);
        break;
      } catch (const domain_too_small&) {
        L *= 1.5;
        if (L > 200.0) throw;
      }
    }
  }

  const double v0 = V.at_origin();
  const double s_first = v0 - rep.linear.front().energy;
  const double s_last = v0 - rep.linear.back().energy;
  const double margin = std::max(1.0, 0.5 * (rep.linear.back().energy - rep.linear.front().energy) /
                                          std::max(1, n_max));
  rep.nonlinear = nonlinear_spectrum(MasterEquation{V}, n_max, {s_last - margin, s_first + margin},
                                     cfg, slope_tol);

  rep.max_residual = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double r = std::abs(rep.nonlinear[n].slope - (v0 - rep.linear[n].energy));
    rep.nonlinear[n].residual = r;
    rep.residuals.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

std::vector<ScanTransition> initial_function_scan(const PotentialSpec& V,
                                                  std::pair<double, double> y0_range, int grid,
                                                  const IntegratorConfig& cfg,
                                                  double fixed_slope) {
  require_confining(V, "initial_function_scan");
  cfg.validate();
  if (grid < 2) throw std::invalid_argument("initial_function_scan: grid must be >= 2");
  const double lo = std::min(y0_range.first, y0_range.second);
  const double hi = std::max(y0_range.first, y0_range.second);

  std::vector<std::pair<double, int>> counts;
  counts.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    const double c = lo + (hi - lo) * i / (grid - 1);
    const double E = V.at_origin() - c * c - fixed_slope;
    const Trajectory traj = integrate_riccati(V, E, c, cfg);
    counts.emplace_back(c, static_cast<int>(traj.events.size()));
  }

  std::vector<ScanTransition> transitions;
  for (std::size_t i = 0; i + 1 < counts.size(); ++i)
    if (counts[i].second != counts[i + 1].second)
      transitions.push_back(
          {counts[i].first, counts[i + 1].first, counts[i].second, counts[i + 1].second});
  return transitions;
}

}  // namespace nleig
