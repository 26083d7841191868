#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nleig/integrate.hpp"

namespace nleig::detail {

// Dormand-Prince 5(4) tableau (Hairer, Norsett & Wanner sec. II.5).
constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0,
                 a42 = -56.0 / 15.0, a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0,
                 a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0,
                 a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0,
                 a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafe = 0.9, kFacl = 0.2, kFacr = 10.0, kBeta = 0.04;

enum class StepResult { Ok, ReachedEnd, Underflow };

// Embedded 5(4) pair with PI (Lund) step-size control and FSAL, fixed state
// dimension N. Steps are additionally capped by the dense-output spacing so
// that sample gaps stay bounded.
template <int N, class RHS>
class DormandPrince {
public:
  DormandPrince(RHS rhs, const IntegratorConfig& cfg)
      : rhs_(rhs),
        rtol_(cfg.rtol),
        atol_(cfg.atol),
        hmin_(cfg.h_min),
        hmax_(std::min(cfg.h_max, cfg.max_sample_dx)) {}

  void reset(double x, const std::array<double, N>& y, double h) {
    x_ = x;
    y_ = y;
    h_ = std::clamp(h, hmin_, hmax_);
    have_k1_ = false;
    facold_ = 1e-4;
  }

  double x() const { return x_; }
  const std::array<double, N>& y() const { return y_; }
  // derivative at the current point (valid after an accepted step)
  const std::array<double, N>& k1() const { return k1_; }
  double h() const { return h_; }

  StepResult step(double x_end) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (x_ >= x_end) return StepResult::ReachedEnd;
    if (!have_k1_) {
      rhs_(x_, y_, k1_);
      have_k1_ = true;
    }
    bool had_reject = false;
    std::array<double, N> k2, k3, k4, k5, k6, k7, w, ynew;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      if (h_ < hmin_ || 0.1 * h_ <= std::abs(x_) * eps) return StepResult::Underflow;
      double h = h_;
      bool last = false;
      if (x_ + 1.01 * h >= x_end) {
        h = x_end - x_;
        last = true;
      }

      for (int i = 0; i < N; ++i) w[i] = y_[i] + h * a21 * k1_[i];
      rhs_(x_ + c2 * h, w, k2);
      for (int i = 0; i < N; ++i) w[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
      rhs_(x_ + c3 * h, w, k3);
      for (int i = 0; i < N; ++i) w[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
      rhs_(x_ + c4 * h, w, k4);
      for (int i = 0; i < N; ++i)
        w[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs_(x_ + c5 * h, w, k5);
      for (int i = 0; i < N; ++i)
        w[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      rhs_(x_ + h, w, k6);
      for (int i = 0; i < N; ++i)
        ynew[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      rhs_(x_ + h, ynew, k7);

      double err = 0.0;
      for (int i = 0; i < N; ++i) {
        const double ee =
            h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(ynew[i]));
        err += (ee / sc) * (ee / sc);
      }
      err = std::sqrt(err / N);
      if (!std::isfinite(err)) err = 2.0;  // reject steps that left the finite range

      const double fac11 = std::pow(err, 0.2 - kBeta * 0.75);
      if (err > 1.0) {
        h_ = h / std::min(1.0 / kFacl, fac11 / kSafe);
        had_reject = true;
        continue;
      }

      // accepted
      double fac = fac11 / std::pow(facold_, kBeta);
      fac = std::max(1.0 / kFacr, std::min(1.0 / kFacl, fac / kSafe));
      double hnew = h / fac;
      if (had_reject) hnew = std::min(hnew, h);
      facold_ = std::max(err, 1e-4);
      x_ = last ? x_end : x_ + h;
      y_ = ynew;
      k1_ = k7;
      h_ = std::min(hnew, hmax_);
      return last ? StepResult::ReachedEnd : StepResult::Ok;
    }
    return StepResult::Underflow;
  }

private:
  RHS rhs_;
  double rtol_, atol_, hmin_, hmax_;
  double x_ = 0.0;
  std::array<double, N> y_{};
  std::array<double, N> k1_{};
  double h_ = 0.0;
  double facold_ = 1e-4;
  bool have_k1_ = false;
};

}  // namespace nleig::detail
