#include "lienard/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/errors.hpp"
#include "lienard/roots.hpp"

namespace lienard::deform {

using funcs::LienardSystem;
using funcs::Polynomial;
using funcs::ScalarFn;
using hypo::Tri;

namespace {

constexpr double kFineWidth = 1e-13;

void require_BCE(const hypo::HypothesisReport& rep) {
  if (rep.B.status != Tri::Holds) throw PreconditionError("B", "hypothesis B does not hold: " + rep.B.reason);
  if (rep.C.status != Tri::Holds) throw PreconditionError("C", "hypothesis C does not hold: " + rep.C.reason);
  if (rep.E.status != Tri::Holds) throw PreconditionError("E", "hypothesis E does not hold: " + rep.E.reason);
}

double fine_root(const ScalarFn& F, const roots::RootInterval& r) {
  const double scale = 1.0 + std::max(std::abs(r.lo), std::abs(r.hi));
  return roots::refine_root(F, r, std::max(kFineWidth, 8 * std::numeric_limits<double>::epsilon() * scale))
      .midpoint();
}

LienardSystem with_g(const LienardSystem& sys, const ScalarFn& g) {
  return sys.friction_given() ? LienardSystem::from_friction(sys.f(), g) : LienardSystem::from_primitive(sys.F(), g);
}

hypo::Options analyze_opts(const Options& opts) {
  hypo::Options h;
  h.tol_D = opts.tol_D;
  return h;
}

// B for g alone: pair it with F = -x, which satisfies the F part.
void require_g_B(const ScalarFn& g) {
  const auto b = hypo::check_B(LienardSystem::from_primitive(ScalarFn::poly({0.0, -1.0}), g));
  if (b.status != Tri::Holds) throw PreconditionError("B", "g does not satisfy x g(x) > 0: " + b.reason);
}

}  // namespace

DeformOutcome deform_g_lambda(const LienardSystem& sys, const Options& opts) {
  const auto rep = hypo::analyze(sys, analyze_opts(opts));
  require_BCE(rep);
  if (!(rep.D.G_x2 > 0.0) || !(rep.D.G_x1 > 0.0)) throw PreconditionError("B", "G(x1), G(x2) must be positive");
  if (rep.D.status == Tri::Holds) return {"g_lambda", sys, 1.0, std::nullopt, std::nullopt, std::nullopt, rep};
  const double lambda = sys.G()(fine_root(sys.F(), *rep.C.x1)) / sys.G()(fine_root(sys.F(), *rep.C.x2));
  const LienardSystem out = with_g(sys, ScalarFn::neg_half_factor(sys.g(), lambda));
  return {"g_lambda", out, lambda, std::nullopt, std::nullopt, std::nullopt, hypo::analyze(out, analyze_opts(opts))};
}

DeformOutcome deform_F_scale(const LienardSystem& sys, const Options& opts) {
  const auto rep = hypo::analyze(sys, analyze_opts(opts));
  require_BCE(rep);
  if (rep.D.status == Tri::Holds || rep.D.gap > 0.0)
    throw PreconditionError("G(x1) < G(x2)", "F_scale needs G(x1) < G(x2); use g_lambda instead");
  const ScalarFn& F = sys.F();
  const ScalarFn& G = sys.G();
  const double x2 = fine_root(F, *rep.C.x2);
  const double target = G(fine_root(F, *rep.C.x1));
  // G decreases on (x2, 0) from G(x2) > G(x1) to 0.
  double a = x2, b = 0.0;
  while (b - a > 1e-12 * std::abs(x2)) {
    const double m = 0.5 * (a + b);
    (G(m) > target ? a : b) = m;
  }
  const double x2_star = 0.5 * (a + b);
  const double lambda = x2 / x2_star;
  const LienardSystem out = LienardSystem::from_primitive(ScalarFn::neg_half_arg_scale(F, lambda), sys.g());
  return {"F_scale", out, lambda, std::nullopt, x2_star, std::nullopt, hypo::analyze(out, analyze_opts(opts))};
}

Thresholds poly_thresholds(const Polynomial& P) {
  if (P.degree() < 3 || P.degree() % 2 == 0)
    throw PreconditionError("odd degree >= 3", "polynomial must have odd degree >= 3");
  if (!(P.leading() > 0.0)) throw PreconditionError("positive leading coefficient", "leading coefficient must be positive");
  Thresholds t;
  for (const Polynomial& d : {P.derivative(), P.derivative().derivative()}) {
    const ScalarFn fn = ScalarFn::poly(d);
    const double R = roots::default_search_radius(d);
    const auto found = roots::isolate_roots(d, 0.0, R, 1e-6);
    if (found.empty() || !(found.back().hi > 0.0)) continue;
    // A root exactly at 0 leaves the threshold at 0.
    if (found.back().lo <= 0.0 && d.coeff(0) == 0.0) continue;
    t.xi_plus = std::max(t.xi_plus, roots::refine_root(fn, found.back(), kFineWidth).hi);
  }
  t.xi_minus_reason = "no-threshold: P'' < 0 for all sufficiently negative y";
  return t;
}

namespace {

// max(0, P'(0), P(xi)/xi, |P'(t)| for tangent points t in (0, xi)).
double lambda_plus_of(const Polynomial& P, double xi) {
  const Polynomial dP = P.derivative();
  double best = std::max(0.0, dP(0.0));
  if (!(xi > 0.0)) return best;
  best = std::max(best, P(xi) / xi);
  // Tangent lines through the origin: P(t) - t P'(t) = 0.
  const Polynomial T = P - Polynomial({0.0, 1.0}) * dP;
  if (T.is_zero()) return best;
  const ScalarFn Tf = ScalarFn::poly(T);
  for (const auto& r : roots::isolate_roots(T, 0.0, xi, 1e-9)) {
    if (!(r.lo > 0.0) || !(r.hi < xi)) continue;
    const double t = roots::refine_root(Tf, r, kFineWidth).midpoint();
    best = std::max(best, std::abs(dP(t)));
  }
  return best;
}

}  // namespace

LambdaBar poly_lambda_bar(const Polynomial& P) {
  if (P.coeff(0) != 0.0) throw PreconditionError("P(0) = 0", "polynomial must vanish at 0");
  const Polynomial Q = -1.0 * P.scaled_argument(-1.0);
  LambdaBar lb;
  lb.xi_plus = poly_thresholds(P).xi_plus;
  lb.xi_plus_reflected = poly_thresholds(Q).xi_plus;
  lb.lambda_plus = lambda_plus_of(P, lb.xi_plus);
  lb.lambda_minus = lambda_plus_of(Q, lb.xi_plus_reflected);
  return lb;
}

std::pair<ScalarFn, double> build_g_mu(const ScalarFn& g, double x2, double x1) {
  if (!(x2 < 0.0 && 0.0 < x1)) throw PreconditionError("x2 < 0 < x1", "build_g_mu needs x2 < 0 < x1");
  const ScalarFn G = funcs::primitive(g);
  const double G1 = G(x1), G2 = G(x2);
  if (!(G2 > 0.0) || !(G1 > 0.0)) throw PreconditionError("B", "G must be positive away from 0");
  const double mu = G1 / G2;
  return {ScalarFn::neg_half_factor(g, mu), mu};
}

DeformOutcome poly_deform(const Polynomial& P, const ScalarFn& g, const Options& opts) {
  const LambdaBar lb = poly_lambda_bar(P);
  require_g_B(g);
  double lambda = lb.value() * (1.0 + opts.margin) + opts.margin;
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    const ScalarFn F = ScalarFn::subtract_linear(ScalarFn::poly(P), lambda);
    const auto c = hypo::check_C(LienardSystem::from_primitive(F, g));
    if (c.status == Tri::Holds) {
      const auto [g_mu, mu] = build_g_mu(g, fine_root(F, *c.x2), fine_root(F, *c.x1));
      const LienardSystem out = LienardSystem::from_primitive(F, g_mu);
      return {"poly", out, lambda, mu, std::nullopt, lb.value(), hypo::analyze(out, analyze_opts(opts))};
    }
    lambda *= 1.0 + 1e-3;
  }
  throw NumericalError("poly_deform: C still fails after " + std::to_string(opts.max_retries) +
                       " increments of lambda (lambda_bar = " + std::to_string(lb.value()) +
                       ", last lambda = " + std::to_string(lambda) + ")");
}

DeformOutcome tilt_pipeline(const ScalarFn& f, const ScalarFn& g, const Options& opts) {
  require_g_B(g);
  const ScalarFn F = funcs::primitive(f);
  auto tilted = [&](double lambda) { return ScalarFn::subtract_linear(F, lambda); };
  auto check = [&](double lambda) { return hypo::check_C(LienardSystem::from_primitive(tilted(lambda), g)); };

  // Bisect only a bracket whose lower end was seen to fail.
  std::optional<double> lo;
  double hi = std::max(f(0.0), 0.0) + 1.0;
  while (check(hi).status != Tri::Holds) {
    lo = hi;
    hi *= 2.0;
    if (hi > opts.lambda_cap)
      throw NumericalError("tilt search: C does not hold for any lambda below " + std::to_string(opts.lambda_cap));
  }
  for (int i = 0; lo && i < opts.bisection_steps; ++i) {
    const double mid = 0.5 * (*lo + hi);
    (check(mid).status == Tri::Holds ? hi : *lo) = mid;
  }
  const ScalarFn Fl = tilted(hi);
  const auto c = check(hi);
  const auto [g_mu, mu] = build_g_mu(g, fine_root(Fl, *c.x2), fine_root(Fl, *c.x1));
  const LienardSystem out = LienardSystem::from_primitive(Fl, g_mu);
  return {"tilt", out, hi, mu, std::nullopt, std::nullopt, hypo::analyze(out, analyze_opts(opts))};
}

CenterCheck center_perturbation_check(const ScalarFn& g, const ScalarFn& F, double x2, double x1, double tol) {
  if (!(x2 < 0.0 && 0.0 < x1)) throw PreconditionError("x2 < 0 < x1", "need x2 < 0 < x1");
  const ScalarFn G = funcs::primitive(g);
  const double G1 = G(x1), G2 = G(x2);
  if (std::abs(G1 - G2) > tol * (1.0 + std::abs(G1) + std::abs(G2)))
    throw PreconditionError("G(x1) = G(x2)", "the center must satisfy G(x1) = G(x2)");
  const auto& Gp = G.pieces();
  if (Gp.nonnegative.degree() < 1 || Gp.nonnegative.sign_at_pos_inf() <= 0 || Gp.negative.degree() < 1 ||
      Gp.negative.sign_at_neg_inf() <= 0)
    throw PreconditionError("G -> +inf", "G must grow without bound on both sides");

  if (std::abs(F(x1)) > tol * (1.0 + std::abs(x1)) || std::abs(F(x2)) > tol * (1.0 + std::abs(x2)))
    return {false, "F(x1) = F(x2) = 0"};
  if (auto why = hypo::increasing_outside(F, x2, x1)) return {false, "F increasing outside [x2, x1]"};
  if (auto why = hypo::xF_negative_near_zero(F)) return {false, "x F(x) < 0 near 0"};
  return {true, ""};
}

}  // namespace lienard::deform
