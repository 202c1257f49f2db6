#pragma once

// Dormand-Prince 5(4) with FSAL, local extrapolation and Hairer's
// fourth-order continuous extension. Generic over the state dimension so the
// cycle code can carry quadrature components along with (x, y).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "lienard/errors.hpp"

namespace lienard::ode {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 0.0;  ///< 0 selects a step automatically
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-14;  ///< relative to max(1, |t|)
  double divergence_radius = 1e8;
  std::size_t max_steps = 50'000'000;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  std::size_t breakpoint_landings = 0;
};

/// Raised when |state| exceeds Options::divergence_radius or the step size
/// underflows. Carries the last accepted (t, x, y).
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double t, double x, double y)
      : NumericalError(what), t_(t), x_(x), y_(y) {}
  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double t_, x_, y_;
};

/// One accepted step together with its continuous extension.
template <std::size_t N>
struct DenseStep {
  using Vec = std::array<double, N>;
  double t0 = 0.0;
  double h = 0.0;
  Vec y0{}, y1{};
  Vec r2{}, r3{}, r4{}, r5{};

  double t1() const noexcept { return t0 + h; }

  Vec at(double t) const noexcept {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec y;
    for (std::size_t i = 0; i < N; ++i)
      y[i] = y0[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    return y;
  }
};

/// Restart the step at crossings of state[component] == value. Used for the
/// C0 breakpoint at x = 0 of piecewise right-hand sides.
struct Breakpoint {
  bool enabled = false;
  std::size_t component = 0;
  double value = 0.0;
};

namespace detail {

struct Tableau {
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

}  // namespace detail

/// Integrates y' = rhs(t, y) from (t0, y0) towards t_end. After every accepted
/// step `observe(step)` is called; returning false stops the integration.
/// rhs has signature void(double t, const Vec& y, Vec& dy).
template <std::size_t N, class Rhs, class Observer>
StepStats integrate_dense(Rhs&& rhs, double t0, std::array<double, N> y0, double t_end, const Options& opts,
                          Observer&& observe, const Breakpoint& bp = {}) {
  using Vec = std::array<double, N>;
  using T = detail::Tableau;
  StepStats stats;
  if (!(t_end > t0)) return stats;

  auto norm = [&](const Vec& e, const Vec& ya, const Vec& yb) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opts.abs_tol + opts.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      s += (e[i] / sk) * (e[i] / sk);
    }
    return std::sqrt(s / static_cast<double>(N));
  };
  auto eval = [&](double t, const Vec& y, Vec& dy) {
    rhs(t, y, dy);
    ++stats.rhs_evals;
  };

  double t = t0;
  Vec y = y0;
  Vec k1;
  eval(t, y, k1);

  double h = opts.initial_step;
  if (!(h > 0.0)) {
    // Hairer's starting step heuristic.
    Vec zero{};
    const double d0 = norm(y, zero, zero);
    const double d1 = norm(k1, zero, zero);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, t_end - t);
    Vec y1, f1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + h0 * k1[i];
    eval(t + h0, y1, f1);
    Vec diff;
    for (std::size_t i = 0; i < N; ++i) diff[i] = f1[i] - k1[i];
    const double d2 = norm(diff, y, y) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
    h = std::min(100.0 * h0, h1);
  }
  h = std::min(h, opts.max_step);

  bool landing = false;
  Vec k2, k3, k4, k5, k6, k7, ytmp, y_new, err;
  while (t < t_end) {
    if (stats.accepted + stats.rejected >= opts.max_steps)
      throw IntegrationError("integrate: maximum number of steps exceeded", t, y[0], N > 1 ? y[1] : 0.0);
    if (h < opts.min_step * std::max(1.0, std::abs(t)))
      throw IntegrationError("integrate: step size underflow", t, y[0], N > 1 ? y[1] : 0.0);
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * T::a21 * k1[i];
    eval(t + T::c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
    eval(t + T::c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
    eval(t + T::c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
    eval(t + T::c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] + T::a64 * k4[i] + T::a65 * k5[i]);
    eval(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + h * (T::a71 * k1[i] + T::a73 * k3[i] + T::a74 * k4[i] + T::a75 * k5[i] + T::a76 * k6[i]);
    eval(t + h, y_new, k7);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] + T::e7 * k7[i]);

    const double e = norm(err, y, y_new);
    if (!std::isfinite(e) || e > 1.0) {
      ++stats.rejected;
      landing = false;
      const double fac = std::isfinite(e) ? std::max(0.2, 0.9 * std::pow(e, -0.2)) : 0.2;
      h *= fac;
      continue;
    }

    DenseStep<N> step;
    step.t0 = t;
    step.h = h;
    step.y0 = y;
    step.y1 = y_new;
    for (std::size_t i = 0; i < N; ++i) {
      const double ydiff = y_new[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      step.r2[i] = ydiff;
      step.r3[i] = bspl;
      step.r4[i] = ydiff - h * k7[i] - bspl;
      step.r5[i] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] + T::d5 * k5[i] + T::d6 * k6[i] +
                        T::d7 * k7[i]);
    }

    if (bp.enabled && !landing) {
      const double b0 = y[bp.component] - bp.value;
      const double b1 = y_new[bp.component] - bp.value;
      constexpr double kAtBreakpoint = 1e-12;
      if (std::abs(b0) > kAtBreakpoint && b0 * b1 < 0.0) {
        // Shorten the step so it ends on the breakpoint, then restart from there.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double bm = step.at(t + mid * h)[bp.component] - bp.value;
          (bm * b0 > 0.0 ? lo : hi) = mid;
        }
        const double h_land = hi * h;
        if (h_land > opts.min_step * std::max(1.0, std::abs(t))) {
          h = h_land;
          landing = true;
          ++stats.breakpoint_landings;
          continue;
        }
      }
    }
    landing = false;

    ++stats.accepted;
    t = last ? t_end : t + h;
    step.h = t - step.t0;
    y = y_new;
    k1 = k7;
    for (std::size_t i = 0; i < std::min<std::size_t>(N, 2); ++i)
      if (!std::isfinite(y[i]) || std::abs(y[i]) > opts.divergence_radius)
        throw IntegrationError("integrate: trajectory diverged", t, y[0], N > 1 ? y[1] : 0.0);

    if (!observe(static_cast<const DenseStep<N>&>(step))) break;

    const double fac = std::min(10.0, std::max(0.2, 0.9 * std::pow(std::max(e, 1e-10), -0.2)));
    h = std::min(h * fac, opts.max_step);
  }
  return stats;
}

}  // namespace lienard::ode
