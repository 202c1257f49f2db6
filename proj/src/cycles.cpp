#include "lienard/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "lienard/errors.hpp"

namespace lienard::cycles {

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Neutral: return "neutral";
  }
  return "neutral";
}

ReturnMapSample return_map(const funcs::LienardSystem& sys, double x0, const Options& opts) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw InputError("return_map: x0 must be positive");
  ReturnMapSample s;
  s.x_in = x0;
  try {
    const auto hit = ode::next_section_crossing(sys, {0.0, x0, 0.0}, ode::Section::positive_x_axis(),
                                                ode::Direction::Decreasing, opts.max_time, opts.ode);
    if (!hit) {
      s.failure = "no return within max_time";
      return s;
    }
    s.x_out = hit->x;
    s.period = hit->t;
    s.returned = true;
  } catch (const ode::IntegrationError& e) {
    s.failure = e.what();
  }
  return s;
}

StabilityResult classify_stability(const funcs::LienardSystem& sys, double x_fixed, const Options& opts) {
  const double h = opts.fd_rel * x_fixed;
  const auto plus = return_map(sys, x_fixed + h, opts);
  const auto minus = return_map(sys, x_fixed - h, opts);
  if (!plus.returned || !minus.returned)
    throw NumericalError("classify_stability: no return near x = " + std::to_string(x_fixed));
  StabilityResult r;
  r.derivative = (plus.x_out - minus.x_out) / (2.0 * h);
  if (r.derivative < 1.0 - opts.neutral_band)
    r.stability = Stability::Stable;
  else if (r.derivative > 1.0 + opts.neutral_band)
    r.stability = Stability::Unstable;
  else
    r.stability = Stability::Neutral;
  return r;
}

namespace {

using Vec4 = std::array<double, 4>;

// Runs one revolution of the augmented system (x, y, int g, int g F),
// handing every accepted step to `step_fn` until the return crossing.
template <class StepFn>
std::optional<double> revolve(const funcs::LienardSystem& sys, double x0, const Options& opts, StepFn&& step_fn) {
  const auto& F = sys.F();
  const auto& g = sys.g();
  auto rhs = [&](double, const Vec4& u, Vec4& du) {
    const double Fx = F(u[0]);
    const double gx = g(u[0]);
    du[0] = u[1] - Fx;
    du[1] = -gx;
    du[2] = gx;
    du[3] = gx * Fx;
  };
  const auto section = ode::Section::positive_x_axis();
  auto fn = [&](const Vec4& u) { return section.value(u[0], u[1]); };
  const double t_min = 1e-10;
  auto accept = [&](double t, const Vec4& u) { return t > t_min && section.admissible(u[0]); };
  std::optional<double> t_hit;
  ode::integrate_dense<4>(
      rhs, 0.0, Vec4{x0, 0.0, 0.0, 0.0}, opts.max_time, opts.ode,
      [&](const ode::DenseStep<4>& step) {
        t_hit = ode::first_crossing(step, fn, ode::Direction::Decreasing, accept);
        step_fn(step, t_hit ? *t_hit : step.t1(), t_hit.has_value());
        return !t_hit;
      },
      ode::breakpoint_for(sys));
  return t_hit;
}

}  // namespace

OrbitIntegrals cycle_integrals(const funcs::LienardSystem& sys, double x_fixed, const Options& opts) {
  if (!(x_fixed > 0.0)) throw InputError("cycle_integrals: x must be positive");
  OrbitIntegrals out;
  out.x_min = out.x_max = x_fixed;
  const auto& F = sys.F();
  auto xdot = [&](const Vec4& u) { return u[1] - F(u[0]); };
  const auto t_hit = revolve(sys, x_fixed, opts, [&](const ode::DenseStep<4>& step, double t_end, bool last) {
    // Extremes of x occur where x' = y - F(x) changes sign.
    constexpr int kSub = 8;
    double ta = step.t0;
    double va = xdot(step.y0);
    for (int j = 1; j <= kSub; ++j) {
      const double tb = step.t0 + (t_end - step.t0) * j / kSub;
      const auto ub = step.at(tb);
      const double vb = xdot(ub);
      out.x_min = std::min(out.x_min, ub[0]);
      out.x_max = std::max(out.x_max, ub[0]);
      if (va != 0.0 && vb != 0.0 && (va > 0.0) != (vb > 0.0)) {
        const double t = ode::locate_on_step(step, ta, tb, xdot);
        const double x = step.at(t)[0];
        out.x_min = std::min(out.x_min, x);
        out.x_max = std::max(out.x_max, x);
      }
      ta = tb;
      va = vb;
    }
    if (last) {
      const auto u = step.at(t_end);
      out.period = t_end;
      out.x_return = u[0];
      out.integral_g = u[2];
      out.integral_gF = u[3];
    }
  });
  if (!t_hit) throw NumericalError("cycle_integrals: orbit through x = " + std::to_string(x_fixed) + " does not return");
  return out;
}

std::vector<ode::State> closed_orbit(const funcs::LienardSystem& sys, double x_fixed, int n, const Options& opts) {
  if (n < 2) throw InputError("closed_orbit: need at least two samples");
  std::vector<ode::DenseStep<4>> steps;
  const auto t_hit = revolve(sys, x_fixed, opts, [&](const ode::DenseStep<4>& step, double, bool) { steps.push_back(step); });
  if (!t_hit) throw NumericalError("closed_orbit: orbit does not return");
  std::vector<ode::State> out;
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    const double t = *t_hit * i / (n - 1);
    while (k + 1 < steps.size() && steps[k].t1() < t) ++k;
    const auto u = steps[k].at(t);
    out.push_back({t, u[0], u[1]});
  }
  return out;
}

namespace {

int displacement_sign(const ReturnMapSample& s, double band) {
  const double d = s.displacement();
  if (std::abs(d) <= band * s.x_in) return 0;
  return d > 0.0 ? 1 : -1;
}

std::vector<ReturnMapSample> evaluate_grid(const funcs::LienardSystem& sys, const std::vector<double>& xs,
                                           const Options& opts) {
  std::vector<ReturnMapSample> out(xs.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(xs.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = return_map(sys, xs[i], opts);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < xs.size(); i = next++) out[i] = return_map(sys, xs[i], opts);
    });
  for (auto& t : pool) t.join();
  return out;
}

// Bisects a sign change of the displacement inside [a, b].
double bisect_fixed_point(const funcs::LienardSystem& sys, double a, double b, int sign_a, const Options& opts) {
  while (b - a > opts.bisect_rel * 0.5 * (a + b)) {
    const double m = 0.5 * (a + b);
    const auto s = return_map(sys, m, opts);
    if (!s.returned) throw NumericalError("find_cycles: no return at x = " + std::to_string(m) + " while bisecting");
    const int sm = displacement_sign(s, opts.zero_band);
    if (sm == 0) return m;
    (sm == sign_a ? a : b) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

SearchResult find_cycles(const funcs::LienardSystem& sys, double x_lo, double x_hi, int n_grid, const Options& opts,
                         std::optional<CrossingLines> lines) {
  if (!(x_lo > 0.0) || !(x_hi > x_lo)) throw InputError("find_cycles: need 0 < x_lo < x_hi");
  if (n_grid < 8) throw InputError("find_cycles: grid needs at least 8 points");
  SearchResult res;
  res.x_lo = x_lo;
  res.x_hi = x_hi;
  std::vector<double> xs(static_cast<std::size_t>(n_grid));
  for (int i = 0; i < n_grid; ++i) xs[i] = i + 1 == n_grid ? x_hi : x_lo + (x_hi - x_lo) * i / (n_grid - 1);
  res.grid = evaluate_grid(sys, xs, opts);

  std::vector<int> sign(xs.size(), 0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!res.grid[i].returned) {
      res.notes.push_back("no return at x = " + std::to_string(xs[i]) + ": " + res.grid[i].failure);
      continue;
    }
    sign[i] = displacement_sign(res.grid[i], opts.zero_band);
  }

  // Brackets: adjacent opposite signs, or a single zero-band point between them.
  std::vector<std::pair<std::size_t, std::size_t>> brackets;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!res.grid[i].returned || !res.grid[i + 1].returned) continue;
    if (sign[i] * sign[i + 1] < 0) {
      brackets.emplace_back(i, i + 1);
    } else if (sign[i] != 0 && sign[i + 1] == 0) {
      std::size_t j = i + 1;
      while (j < xs.size() && res.grid[j].returned && sign[j] == 0) ++j;
      if (j < xs.size() && res.grid[j].returned && sign[j] == -sign[i]) {
        if (j == i + 2)
          brackets.emplace_back(i, j);
        else
          res.notes.push_back("displacement within the zero band on [" + std::to_string(xs[i + 1]) + ", " +
                              std::to_string(xs[j - 1]) + "]; not resolved");
      }
    }
  }

  for (const auto& [i, j] : brackets) {
    CycleRecord rec;
    rec.x_fixed = bisect_fixed_point(sys, xs[i], xs[j], sign[i], opts);
    const auto stab = classify_stability(sys, rec.x_fixed, opts);
    rec.stability = stab.stability;
    rec.map_derivative = stab.derivative;
    const auto orbit = cycle_integrals(sys, rec.x_fixed, opts);
    rec.period = orbit.period;
    rec.residual = orbit.x_return - rec.x_fixed;
    rec.x_min = orbit.x_min;
    rec.x_max = orbit.x_max;
    rec.integral_g = orbit.integral_g;
    rec.integral_gF = orbit.integral_gF;
    if (lines) {
      rec.crosses_x1 = rec.x_max >= lines->x1;
      rec.crosses_x2 = rec.x_min <= lines->x2;
    }
    res.cycles.push_back(rec);
  }
  return res;
}

std::pair<double, double> default_range(const hypo::HypothesisReport& rep) {
  double hi = 10.0;
  if (const auto l = lines_from(rep)) hi = 2.0 * (1.0 + std::max(std::abs(l->x1), std::abs(l->x2)));
  return {hi / 100.0, hi};
}

std::optional<CrossingLines> lines_from(const hypo::HypothesisReport& rep) {
  if (rep.C.status != hypo::Tri::Holds || !rep.C.x1 || !rep.C.x2) return std::nullopt;
  return CrossingLines{rep.C.x2->midpoint(), rep.C.x1->midpoint()};
}

CrossingCounts count_crossings(const std::vector<CycleRecord>& records) {
  CrossingCounts c;
  for (const auto& r : records) {
    ++c.total;
    const bool a = r.crosses_x1.value_or(false);
    const bool b = r.crosses_x2.value_or(false);
    if (a && b)
      ++c.both;
    else if (a)
      ++c.only_x1;
    else if (b)
      ++c.only_x2;
    else
      ++c.neither;
  }
  return c;
}

std::vector<CrossingCheck> verify_crossings(const std::vector<CycleRecord>& records, hypo::Crossing direction) {
  std::vector<CrossingCheck> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    CrossingCheck c{i, true, r.x_min, r.x_max};
    const bool has = r.crosses_x1.has_value() && r.crosses_x2.has_value();
    switch (direction) {
      case hypo::Crossing::MustCrossX1: c.pass = has && *r.crosses_x1; break;
      case hypo::Crossing::MustCrossX2: c.pass = has && *r.crosses_x2; break;
      case hypo::Crossing::MustCrossBoth: c.pass = has && *r.crosses_x1 && *r.crosses_x2; break;
      case hypo::Crossing::None: c.pass = true; break;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace lienard::cycles
