#include "lienard/ode.hpp"

#include <algorithm>
#include <cmath>

#include "lienard/errors.hpp"

namespace lienard::ode {

std::pair<double, double> vector_field(const funcs::LienardSystem& sys, double x, double y) {
  return {y - sys.F()(x), -sys.g()(x)};
}

Breakpoint breakpoint_for(const funcs::LienardSystem& sys) {
  Breakpoint bp;
  bp.enabled = sys.piecewise();
  bp.component = 0;
  bp.value = 0.0;
  return bp;
}

namespace {

void require_finite_state(const State& s) {
  if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y))
    throw InputError("initial state must be finite");
}

auto plane_rhs(const funcs::LienardSystem& sys) {
  return [&sys](double, const std::array<double, 2>& u, std::array<double, 2>& du) {
    du[0] = u[1] - sys.F()(u[0]);
    du[1] = -sys.g()(u[0]);
  };
}

}  // namespace

Trajectory integrate(const funcs::LienardSystem& sys, const State& init, double t_max, const Options& opts) {
  require_finite_state(init);
  if (!(t_max > init.t)) throw InputError("integrate: t_max must exceed the initial time");
  Trajectory traj;
  traj.samples.push_back(init);
  traj.stats = integrate_dense<2>(
      plane_rhs(sys), init.t, {init.x, init.y}, t_max, opts,
      [&](const DenseStep<2>& step) {
        traj.samples.push_back({step.t1(), step.y1[0], step.y1[1]});
        return true;
      },
      breakpoint_for(sys));
  return traj;
}

std::optional<State> next_section_crossing(const funcs::LienardSystem& sys, const State& init,
                                           const Section& section, Direction direction, double max_time,
                                           const Options& opts) {
  require_finite_state(init);
  if (!(max_time > 0.0)) throw InputError("next_section_crossing: max_time must be positive");
  std::optional<State> hit;
  auto fn = [&](const std::array<double, 2>& u) { return section.value(u[0], u[1]); };
  // A start lying on the section within rounding must not count as a crossing.
  const double t_min = init.t + 1e-10 * std::max(1.0, std::abs(init.t));
  auto accept = [&](double t, const std::array<double, 2>& u) { return t > t_min && section.admissible(u[0]); };
  integrate_dense<2>(
      plane_rhs(sys), init.t, {init.x, init.y}, init.t + max_time, opts,
      [&](const DenseStep<2>& step) {
        if (auto t = first_crossing(step, fn, direction, accept)) {
          const auto u = step.at(*t);
          hit = State{*t, u[0], u[1]};
          return false;
        }
        return true;
      },
      breakpoint_for(sys));
  return hit;
}

}  // namespace lienard::ode
