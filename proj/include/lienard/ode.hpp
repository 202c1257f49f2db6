#pragma once

// Integration of the Lienard plane system  x' = y - F(x),  y' = -g(x).

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lienard/dopri5.hpp"
#include "lienard/funcs.hpp"

namespace lienard::ode {

struct State {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Trajectory {
  std::vector<State> samples;  ///< initial state, then one sample per accepted step
  StepStats stats;
};

/// (y - F(x), -g(x)).
std::pair<double, double> vector_field(const funcs::LienardSystem& sys, double x, double y);

/// Breakpoint at x = 0 when F or g is piecewise.
Breakpoint breakpoint_for(const funcs::LienardSystem& sys);

/// Adaptive integration from init up to time t_max. Throws InputError for
/// t_max <= init.t or non-finite input, IntegrationError on divergence or
/// step underflow.
Trajectory integrate(const funcs::LienardSystem& sys, const State& init, double t_max, const Options& opts = {});

/// A vertical line x = c, or the half-line {y = 0, x > 0}.
struct Section {
  enum class Kind { VerticalLine, PositiveXAxis };
  Kind kind = Kind::PositiveXAxis;
  double c = 0.0;

  static Section vertical_line(double c) { return {Kind::VerticalLine, c}; }
  static Section positive_x_axis() { return {Kind::PositiveXAxis, 0.0}; }

  /// Signed distance whose zero set contains the section.
  double value(double x, double y) const noexcept { return kind == Kind::VerticalLine ? x - c : y; }
  /// Restriction to the half-line for the axis section.
  bool admissible(double x) const noexcept { return kind == Kind::VerticalLine || x > 0.0; }
};

/// Direction in which the section function value(x, y) crosses zero.
enum class Direction { Increasing, Decreasing, Either };

/// First crossing strictly after init.t within duration max_time, or nullopt
/// if there is none. The returned state satisfies the section equation to
/// 1e-12 relative to the state scale.
std::optional<State> next_section_crossing(const funcs::LienardSystem& sys, const State& init,
                                           const Section& section, Direction direction, double max_time,
                                           const Options& opts = {});

/// Time in [ta, tb] at which fn(state(t)) vanishes on the dense output of
/// `step`; fn must take opposite signs at ta and tb.
template <std::size_t N, class Fn>
double locate_on_step(const DenseStep<N>& step, double ta, double tb, Fn&& fn) {
  auto g = [&](double t) { return fn(step.at(t)); };
  double fa = g(ta);
  double fb = g(tb);
  if (fa == 0.0) return ta;
  if (fb == 0.0) return tb;
  std::uintmax_t iters = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(g, ta, tb, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
  const double t0 = bracket.first, t1 = bracket.second;
  return std::abs(g(t0)) <= std::abs(g(t1)) ? t0 : t1;
}

/// Earliest time in (step.t0, step.t1] at which fn(state) crosses zero in the
/// given direction and accept(t, state) holds. The dense output is scanned on
/// `subdivisions` sub-intervals so a pair of crossings inside one step is not
/// missed. A zero at step.t0 itself never counts.
template <std::size_t N, class Fn, class Accept>
std::optional<double> first_crossing(const DenseStep<N>& step, Fn&& fn, Direction direction, Accept&& accept,
                                     int subdivisions = 4) {
  double ta = step.t0;
  double va = fn(step.y0);
  for (int j = 1; j <= subdivisions; ++j) {
    const double tb = j == subdivisions ? step.t1() : step.t0 + step.h * j / subdivisions;
    const double vb = fn(j == subdivisions ? step.y1 : step.at(tb));
    if (va != 0.0 && (vb == 0.0 || (va > 0.0) != (vb > 0.0))) {
      const bool decreasing = va > 0.0;
      if (direction == Direction::Either || decreasing == (direction == Direction::Decreasing)) {
        const double t = vb == 0.0 ? tb : locate_on_step(step, ta, tb, fn);
        if (accept(t, step.at(t))) return t;
      }
    }
    ta = tb;
    va = vb;
  }
  return std::nullopt;
}

}  // namespace lienard::ode
