#include "lienard/avg.hpp"

#include <cmath>
#include <numbers>

#include "lienard/errors.hpp"
#include "lienard/roots.hpp"

namespace lienard::avg {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpq_class central_ratio(unsigned k) {
  // C(2k, k) / 4^k
  mpz_class four_k = 1;
  four_k <<= 2 * k;
  mpq_class q(binomial(2 * k, k), four_k);
  q.canonicalize();
  return q;
}

}  // namespace

mpq_class wallis_moment_over_pi(int k) {
  if (k < 0 || k > kMaxMomentIndex) throw InputError("wallis_moment: k must lie in [0, 30]");
  const auto uk = static_cast<unsigned>(k);
  mpq_class r = 2 * (central_ratio(uk) - central_ratio(uk + 1));
  r.canonicalize();
  return r;
}

double wallis_moment(int k) { return std::numbers::pi * wallis_moment_over_pi(k).get_d(); }

AveragedAmplitude averaged_amplitude(const funcs::Polynomial& f) {
  AveragedAmplitude out;
  std::vector<double> c(static_cast<std::size_t>(std::max(f.degree(), 0)) + 2, 0.0);
  for (int j = 0; j <= f.degree(); j += 2) {
    if (f.coeff(j) == 0.0) continue;
    const int k = j / 2;
    const double I = wallis_moment(k);
    out.moments_used.emplace_back(k, I);
    c[static_cast<std::size_t>(j) + 1] = f.coeff(j) * I;
  }
  out.fbar = funcs::Polynomial(c);
  return out;
}

Prediction predict_cycles(const funcs::Polynomial& f) {
  Prediction p;
  p.fbar = averaged_amplitude(f).fbar;
  if (p.fbar.is_zero()) {
    p.degenerate = true;
    return p;
  }
  const funcs::ScalarFn fb = funcs::ScalarFn::poly(p.fbar);
  const funcs::Polynomial slope = p.fbar.derivative();
  const double R = roots::default_search_radius(p.fbar);
  for (const auto& r : roots::isolate_roots(p.fbar, 0.0, R, 1e-6)) {
    if (!(r.lo > 0.0) || !r.transversal) continue;
    const auto fine = roots::refine_root(fb, r, 1e-12);
    PredictedCycle c;
    c.radius = fine.midpoint();
    c.fbar_slope = slope(c.radius);
    c.stable_hint = c.fbar_slope > 0.0;
    p.cycles.push_back(c);
  }
  return p;
}

funcs::Polynomial three_cycle_friction(double A, double B) {
  const mpq_class products[] = {mpq_class(-4, 81), mpq_class(49, 81), mpq_class(-14, 9), mpq_class(1)};
  std::vector<double> c(7, 0.0);
  for (int l = 0; l < 4; ++l) {
    // a_{2l} = product / I_{2l}, with I_{2l} / pi exact.
    const mpq_class a = products[l] / wallis_moment_over_pi(l);
    c[static_cast<std::size_t>(2 * l)] = a.get_d() / std::numbers::pi;
  }
  c[1] = A;
  c[3] = B;
  return funcs::Polynomial(c);
}

double default_A() { return 1.0 / (100.0 * std::numbers::pi); }
double default_B() { return 2.0 / std::numbers::pi; }

funcs::LienardSystem duff_levinson_system(double eps, double A, double B) {
  if (!std::isfinite(eps) || !std::isfinite(A) || !std::isfinite(B))
    throw InputError("duff_levinson_system: parameters must be finite");
  return funcs::LienardSystem::from_friction(funcs::ScalarFn::poly(eps * three_cycle_friction(A, B)),
                                             funcs::ScalarFn::poly({0.0, 1.0}));
}

funcs::LienardSystem duff_levinson_system(double eps) { return duff_levinson_system(eps, default_A(), default_B()); }

}  // namespace lienard::avg
