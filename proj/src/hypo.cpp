#include "lienard/hypo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/errors.hpp"

namespace lienard::hypo {

using funcs::Polynomial;
using roots::RootInterval;

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
    case Tri::Unknown: return "unknown";
    case Tri::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::UniqueStableCycle: return "UniqueStableCycle";
    case Verdict::UniqueCycleViaDPrime: return "UniqueCycleViaDPrime";
    case Verdict::AtMostOneCrossingCycle: return "AtMostOneCrossingCycle";
    case Verdict::NoVerdict: return "NoVerdict";
  }
  return "NoVerdict";
}

std::string to_string(Crossing c) {
  switch (c) {
    case Crossing::MustCrossX2: return "MustCrossX2";
    case Crossing::MustCrossX1: return "MustCrossX1";
    case Crossing::MustCrossBoth: return "MustCrossBoth";
    case Crossing::None: return "None";
  }
  return "None";
}

namespace {

constexpr double kRootWidth = 1e-6;
constexpr double kFineWidth = 1e-12;

// Lowest-order nonzero coefficient: p(x) ~ c x^k near 0.
std::pair<int, double> leading_at_zero(const Polynomial& p) {
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k) != 0.0) return {k, p.coeff(k)};
  return {-1, 0.0};
}

// Real roots of p in (0, inf) (side > 0) or (-inf, 0) (side < 0).
int roots_on_side(const Polynomial& p, int side) {
  const auto s = roots::sturm_sequence(p);
  if (side > 0) return roots::count_roots_above(s, 0.0);
  return roots::count_roots_below(s, 0.0) - (p(0.0) == 0.0 ? 1 : 0);
}

double max_abs_on(const funcs::ScalarFn& fn, const RootInterval& r) {
  return std::max({std::abs(fn(r.lo)), std::abs(fn(r.hi)), std::abs(fn(r.midpoint()))});
}

double floor_width(double w, const RootInterval& r) {
  const double scale = 1.0 + std::max(std::abs(r.lo), std::abs(r.hi));
  return std::max(w, 8.0 * std::numeric_limits<double>::epsilon() * scale);
}

// True if p changes sign somewhere in [lo, hi].
bool has_sign_change(const Polynomial& p, double lo, double hi) {
  if (p.is_zero() || !(lo < hi)) return false;
  for (const auto& r : roots::isolate_roots(p, lo, hi, 1e-9))
    if (r.sign_before != r.sign_after) return true;
  return false;
}

}  // namespace

std::optional<std::string> xF_negative_near_zero(const funcs::ScalarFn& F) {
  const auto& Fp = F.pieces();
  const auto [kr, cr] = leading_at_zero(Fp.nonnegative);
  const auto [kl, cl] = leading_at_zero(Fp.negative);
  // x F ~ c x^(k+1) on each side.
  if (!(kr >= 1 && cr < 0.0)) return "x F(x) >= 0 for small x > 0";
  if (!(kl >= 1 && ((kl + 1) % 2 == 0 ? cl < 0.0 : cl > 0.0))) return "x F(x) >= 0 for small x < 0";
  return std::nullopt;
}

std::optional<std::string> increasing_outside(const funcs::ScalarFn& F, double x2, double x1) {
  const auto& Fp = F.pieces();
  const Polynomial fr = Fp.nonnegative.derivative();
  const Polynomial fl = Fp.negative.derivative();
  const double Rr = std::max(roots::default_search_radius(fr), std::abs(x1) + 1.0);
  const double Rl = std::max(roots::default_search_radius(fl), std::abs(x2) + 1.0);
  if (fr.sign_at_pos_inf() <= 0 || has_sign_change(fr, x1, Rr)) return "F is not monotone increasing for x > x1";
  if (fl.sign_at_neg_inf() <= 0 || has_sign_change(fl, -Rl, x2)) return "F is not monotone increasing for x < x2";
  return std::nullopt;
}

BResult check_B(const funcs::LienardSystem& sys) {
  BResult out;
  try {
    const auto& gp = sys.g().pieces();
    const Polynomial& gl = gp.negative;
    const Polynomial& gr = gp.nonnegative;
    if (gr.is_zero() || gl.is_zero()) return {Tri::Fails, "g vanishes identically on a half-line"};
    if (gr(0.0) != 0.0 || gl(0.0) != 0.0) return {Tri::Fails, "g(0) != 0"};
    if (roots_on_side(gr, +1) != 0) return {Tri::Fails, "g has a zero for x > 0"};
    if (roots_on_side(gl, -1) != 0) return {Tri::Fails, "g has a zero for x < 0"};
    if (gr.sign_at_pos_inf() <= 0) return {Tri::Fails, "g < 0 for x > 0"};
    if (gl.sign_at_neg_inf() >= 0) return {Tri::Fails, "g > 0 for x < 0"};

    const auto& fp = sys.f().pieces();
    if (sys.friction_given() && fp.negative(0.0) < 0.0 && fp.nonnegative(0.0) < 0.0) {
      out.status = Tri::Holds;
      out.reason = "f(0) < 0 and x g(x) > 0";
      return out;
    }
    // Weaker form: x F(x) < 0 for small |x|.
    if (auto why = xF_negative_near_zero(sys.F())) return {Tri::Fails, *why};
    out.status = Tri::Holds;
    out.reason = "x F(x) < 0 near 0 and x g(x) > 0";
  } catch (const NumericalError& e) {
    out = {Tri::Unknown, e.what()};
  }
  return out;
}

CResult check_C(const funcs::LienardSystem& sys, bool relaxed) {
  CResult out;
  try {
    const auto& F = sys.F();
    const auto& Fp = F.pieces();
    if (Fp.negative.is_zero() || Fp.nonnegative.is_zero()) {
      out.status = Tri::Fails;
      out.reason = "F vanishes identically on a half-line";
      return out;
    }
    out.zeros = roots::isolate_roots(F, kRootWidth);

    std::vector<RootInterval> transversal;
    for (const auto& r : out.zeros)
      if (r.transversal) transversal.push_back(r);
    const auto at_zero = [](const RootInterval& r) { return r.lo <= 0.0 && 0.0 <= r.hi; };
    if (transversal.size() != 3 || !at_zero(transversal[1]) || !(transversal[0].hi < 0.0) ||
        !(transversal[2].lo > 0.0)) {
      out.status = Tri::Fails;
      out.reason = "F does not have exactly three transversal zeros x2 < 0 < x1 (found " +
                   std::to_string(transversal.size()) + " transversal of " + std::to_string(out.zeros.size()) +
                   ")";
      return out;
    }
    RootInterval x2 = transversal[0], x1 = transversal[2];
    for (const auto& r : out.zeros) {
      if (r.transversal) continue;
      const bool interior = r.lo > x2.hi && r.hi < x1.lo;
      if (!relaxed || !interior || r.sign_before != r.sign_after) {
        out.status = Tri::Fails;
        out.reason = relaxed ? "F has a non-transversal zero that is not a touching zero inside (x2, x1)"
                             : "F has a non-transversal zero";
        return out;
      }
    }
    out.x2 = x2;
    out.x1 = x1;

    x1 = roots::refine_root(F, x1, floor_width(kFineWidth, x1));
    x2 = roots::refine_root(F, x2, floor_width(kFineWidth, x2));
    if (auto why = increasing_outside(F, x2.hi, x1.lo)) {
      out.status = Tri::Fails;
      out.reason = *why;
      return out;
    }
    out.status = Tri::Holds;
    out.reason = "three transversal zeros, F increasing outside [x2, x1]";
  } catch (const NumericalError& e) {
    out.status = Tri::Unknown;
    out.reason = e.what();
  }
  return out;
}

DResult check_D(const funcs::LienardSystem& sys, const RootInterval& x2, const RootInterval& x1, double tol) {
  if (!(tol > 0.0)) throw InputError("check_D: tolerance must be positive");
  const auto& F = sys.F();
  const auto& g = sys.g();
  const auto& G = sys.G();
  const RootInterval r1 = roots::refine_root(F, x1, floor_width(tol / (1.0 + max_abs_on(g, x1)), x1));
  const RootInterval r2 = roots::refine_root(F, x2, floor_width(tol / (1.0 + max_abs_on(g, x2)), x2));
  DResult d;
  d.tol = tol;
  d.G_x1 = G(r1.midpoint());
  d.G_x2 = G(r2.midpoint());
  d.gap = d.G_x1 - d.G_x2;
  d.uncertainty = 0.5 * (max_abs_on(g, r1) * r1.width() + max_abs_on(g, r2) * r2.width());
  d.status = std::abs(d.gap) <= tol * (1.0 + std::abs(d.G_x1) + std::abs(d.G_x2)) ? Tri::Holds : Tri::Fails;
  return d;
}

EResult check_E(const funcs::LienardSystem& sys) {
  const auto& Fp = sys.F().pieces();
  const auto& Gp = sys.G().pieces();
  const Polynomial right = Gp.nonnegative + Fp.nonnegative;
  const Polynomial left = Gp.negative - Fp.negative;
  if (right.degree() < 1 || right.sign_at_pos_inf() <= 0) return {Tri::Fails, "G + F is bounded above as x -> +inf"};
  if (left.degree() < 1 || left.sign_at_neg_inf() <= 0) return {Tri::Fails, "G - F is bounded above as x -> -inf"};
  return {Tri::Holds, "G + F -> +inf as x -> +inf and G - F -> +inf as x -> -inf"};
}

namespace {

// Extremum of F over the open interval (lo, hi) from critical points of f;
// the endpoint values are 0 since lo or hi is a zero of F and the other is 0.
std::pair<double, std::optional<double>> extremum_of_F(const funcs::LienardSystem& sys, double lo, double hi,
                                                       bool maximize) {
  double best = 0.0;
  std::optional<double> arg;
  if (!(lo < hi)) return {best, arg};
  const auto& F = sys.F();
  const auto& f = sys.f();
  const auto& fp = f.pieces();
  if (fp.negative.is_zero() && fp.nonnegative.is_zero()) return {best, arg};
  for (const auto& r : roots::isolate_roots(f, lo, hi, 1e-9)) {
    const auto fine = roots::refine_root(f, r, floor_width(kFineWidth, r));
    const double c = fine.midpoint();
    if (!(c > lo && c < hi)) continue;
    const double v = F(c);
    if (maximize ? v > best : v < best) {
      best = v;
      arg = c;
    }
  }
  return {best, arg};
}

bool gap_beyond_tol(const DResult& d, int sign) {
  const double band = d.tol * (1.0 + std::abs(d.G_x1) + std::abs(d.G_x2));
  return sign > 0 ? d.gap > band : d.gap < -band;
}

}  // namespace

PrimeResult check_Dprime(const funcs::LienardSystem& sys, const RootInterval& x2, const RootInterval& x1,
                         const DResult& d) {
  (void)x1;
  PrimeResult p;
  if (d.status == Tri::NotApplicable || !gap_beyond_tol(d, +1)) return p;
  p.threshold = std::sqrt(2.0 * d.G_x1);
  const auto [best, arg] = extremum_of_F(sys, x2.hi, 0.0, true);
  p.extremum = best;
  if (arg && best >= p.threshold) {
    p.status = Tri::Holds;
    p.witness = arg;
  } else {
    p.status = Tri::Fails;
  }
  return p;
}

PrimeResult check_Ddoubleprime(const funcs::LienardSystem& sys, const RootInterval& x2, const RootInterval& x1,
                               const DResult& d) {
  (void)x2;
  PrimeResult p;
  if (d.status == Tri::NotApplicable || !gap_beyond_tol(d, -1)) return p;
  p.threshold = -std::sqrt(2.0 * d.G_x2);
  const auto [best, arg] = extremum_of_F(sys, 0.0, x1.lo, false);
  p.extremum = best;
  if (arg && best <= p.threshold) {
    p.status = Tri::Holds;
    p.witness = arg;
  } else {
    p.status = Tri::Fails;
  }
  return p;
}

Crossing crossing_direction(const DResult& d) {
  switch (d.status) {
    case Tri::Holds: return Crossing::MustCrossBoth;
    case Tri::Fails: return d.gap > 0.0 ? Crossing::MustCrossX2 : Crossing::MustCrossX1;
    default: return Crossing::None;
  }
}

HypothesisReport analyze(const funcs::LienardSystem& sys, const Options& opts) {
  HypothesisReport rep;
  rep.B = check_B(sys);
  rep.C = check_C(sys, opts.relaxed_C);
  rep.E = check_E(sys);
  if (rep.C.status == Tri::Holds) {
    rep.D = check_D(sys, *rep.C.x2, *rep.C.x1, opts.tol_D);
    rep.Dprime = check_Dprime(sys, *rep.C.x2, *rep.C.x1, rep.D);
    rep.Ddoubleprime = check_Ddoubleprime(sys, *rep.C.x2, *rep.C.x1, rep.D);
    rep.must_cross = crossing_direction(rep.D);
  }

  const bool bc = rep.B.status == Tri::Holds && rep.C.status == Tri::Holds;
  const bool e = rep.E.status == Tri::Holds;
  if (!bc) {
    rep.verdict = Verdict::NoVerdict;
  } else if (e && rep.D.status == Tri::Holds) {
    rep.verdict = Verdict::UniqueStableCycle;
  } else if (e && (rep.Dprime.status == Tri::Holds || rep.Ddoubleprime.status == Tri::Holds)) {
    rep.verdict = Verdict::UniqueCycleViaDPrime;
  } else {
    rep.verdict = Verdict::AtMostOneCrossingCycle;
  }
  rep.existence_expected = bc && e;
  if (rep.existence_expected)
    rep.notes.push_back("existence of a limit cycle expected from B, C and E; not certified, see cycle search");
  if (bc && rep.verdict == Verdict::AtMostOneCrossingCycle)
    rep.notes.push_back("at most one limit cycle crosses both x = x1 and x = x2");
  return rep;
}

}  // namespace lienard::hypo
