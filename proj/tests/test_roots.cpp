#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lienard/errors.hpp"
#include "lienard/roots.hpp"

using namespace lienard;
using funcs::Polynomial;
using funcs::ScalarFn;
using roots::RationalPolynomial;

namespace {

// F of the three-cycle counterexample (with the x/200 and x^3/2 terms).
Polynomial counterexample_F() {
  const double pi = std::numbers::pi;
  return (1.0 / pi) *
         Polynomial({0.0, -4.0 / 81.0, 1.0 / 200.0, 196.0 / 243.0, 0.5, -112.0 / 45.0, 0.0, 64.0 / 35.0});
}

// Sign changes seen by a uniform scan; zeros at sample points are skipped.
std::vector<double> scan_sign_changes(const Polynomial& p, double lo, double hi, double step) {
  std::vector<double> out;
  int prev = 0;
  double prev_x = lo;
  const int n = static_cast<int>(std::ceil((hi - lo) / step));
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = p(x);
    const int s = (v > 0) - (v < 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) out.push_back(0.5 * (x + prev_x));
    prev = s;
    prev_x = x;
  }
  return out;
}

}  // namespace

TEST_CASE("sturm chain of textbook polynomials") {
  const auto s = roots::sturm_sequence(Polynomial({-1.0, 0.0, 1.0}));
  const auto polys = s.polys();
  REQUIRE(polys.size() == 3);
  CHECK(polys[0] == Polynomial({-1.0, 0.0, 1.0}));
  CHECK(polys[1] == Polynomial({0.0, 2.0}));
  CHECK(polys[2] == Polynomial({1.0}));

  const auto lin = roots::sturm_sequence(Polynomial({0.0, 1.0})).polys();
  REQUIRE(lin.size() == 2);
  CHECK(lin[0] == Polynomial({0.0, 1.0}));
  CHECK(lin[1] == Polynomial({1.0}));

  CHECK_THROWS_AS(roots::sturm_sequence(Polynomial{}), InputError);
}

TEST_CASE("sturm chain of the counterexample F ends in a constant") {
  const auto s = roots::sturm_sequence(counterexample_F());
  CHECK(s.chain.front().degree() == 7);  // already squarefree
  CHECK(s.chain.size() == 8);
  CHECK(s.chain.back().degree() == 0);
  CHECK_FALSE(s.chain.back().is_zero());
}

TEST_CASE("squarefree reduction removes multiplicity") {
  // (x-1)^2 (x+2) = x^3 - 3x + 2
  const RationalPolynomial p(Polynomial({2.0, -3.0, 0.0, 1.0}));
  const RationalPolynomial sq = roots::squarefree_part(p);
  CHECK(sq.degree() == 2);
  const auto s = roots::sturm_sequence(p);
  CHECK(roots::count_real_roots(s) == 2);
}

TEST_CASE("count_roots examples") {
  CHECK(roots::count_roots(roots::sturm_sequence(Polynomial({-1.0, 0.0, 1.0})), -2.0, 2.0) == 2);
  CHECK(roots::count_roots(roots::sturm_sequence(Polynomial({1.0, 0.0, 1.0})), -10.0, 10.0) == 0);
  const auto f = roots::sturm_sequence(counterexample_F().derivative());
  CHECK(roots::count_roots(f, -2.0, 2.0) == 4);
  CHECK_THROWS_AS(roots::count_roots(f, 1.0, 1.0), InputError);
}

TEST_CASE("count_roots uses (a, b] and nudges a root at a") {
  const auto s = roots::sturm_sequence(Polynomial({-1.0, 0.0, 1.0}));
  CHECK(roots::count_roots(s, -1.0, 1.0) == 1);  // -1 excluded, 1 counted
  CHECK(roots::count_roots(s, -3.0, -1.0) == 1);
  CHECK(roots::count_roots_above(s, 0.0) == 1);
  CHECK(roots::count_roots_below(s, 0.0) == 1);
}

TEST_CASE("isolate_roots on the counterexample F") {
  const auto found = roots::isolate_roots(ScalarFn::poly(counterexample_F()), -4.0, 4.0, 1e-3);
  REQUIRE(found.size() == 3);
  for (const auto& r : found) {
    CHECK(r.width() <= 1e-3);
    CHECK(r.transversal);
  }
  // Independent high-precision roots: -1.12958614364455, 0.247711677481830.
  CHECK(found[0].contains(-1.12958614364455));
  CHECK(found[1].contains(0.0));
  CHECK(found[2].contains(0.247711677481830));
  const auto x2 = roots::refine_root(ScalarFn::poly(counterexample_F()), found[0], 1e-4);
  const auto x1 = roots::refine_root(ScalarFn::poly(counterexample_F()), found[2], 1e-4);
  CHECK(x2.lo >= -1.130);
  CHECK(x2.hi <= -1.129);
  CHECK(x1.lo >= 0.247);
  CHECK(x1.hi <= 0.248);
  CHECK(found[0].sign_before == -1);
  CHECK(found[0].sign_after == 1);
}

TEST_CASE("isolate_roots on f = F' of the counterexample") {
  const auto found = roots::isolate_roots(counterexample_F().derivative(), -2.0, 2.0, 1e-5);
  REQUIRE(found.size() == 4);
  // Exact roots from an independent high-precision computation.
  const double expected[] = {-0.968070505037, -0.342653555349, -0.172630064273, 0.139630696223};
  for (int i = 0; i < 4; ++i) CHECK(found[i].contains(expected[i]));
  CHECK(found[1].lo >= -0.343);
  CHECK(found[1].hi <= -0.342);
  CHECK(found[2].lo >= -0.173);
  CHECK(found[2].hi <= -0.172);
  CHECK(found[3].lo >= 0.139);
  CHECK(found[3].hi <= 0.140);
}

TEST_CASE("van der Pol F has roots -sqrt3, 0, sqrt3") {
  const double w = 1e-9;
  const auto found = roots::isolate_roots(ScalarFn::poly({0.0, -1.0, 0.0, 1.0 / 3.0}), w);
  REQUIRE(found.size() == 3);
  CHECK(found[0].contains(-std::sqrt(3.0)));
  CHECK(found[1].contains(0.0));
  CHECK(found[2].contains(std::sqrt(3.0)));
  for (const auto& r : found) CHECK(r.width() <= w);
}

TEST_CASE("non-transversal zeros are reported, not rejected") {
  // x^2 (x - 1): double root at 0, simple root at 1
  const auto found = roots::isolate_roots(Polynomial({0.0, 0.0, -1.0, 1.0}), -3.0, 3.0, 1e-6);
  REQUIRE(found.size() == 2);
  CHECK_FALSE(found[0].transversal);
  CHECK(found[1].transversal);
  // x^3: sign change but zero slope
  const auto cube = roots::isolate_roots(Polynomial({0.0, 0.0, 0.0, 1.0}), -1.0, 1.0, 1e-6);
  REQUIRE(cube.size() == 1);
  CHECK_FALSE(cube[0].transversal);
}

TEST_CASE("roots at range endpoints and at the breakpoint of piecewise functions") {
  const auto ends = roots::isolate_roots(Polynomial({-1.0, 0.0, 1.0}), -1.0, 1.0, 1e-6);
  REQUIRE(ends.size() == 2);
  CHECK(ends[0].contains(-1.0));
  CHECK(ends[1].contains(1.0));

  // F(x) = x^3/3 - x, left half scaled by 2: negative root moves to -sqrt3/2.
  const ScalarFn Fs = ScalarFn::neg_half_arg_scale(ScalarFn::poly({0.0, -1.0, 0.0, 1.0 / 3.0}), 2.0);
  const auto found = roots::isolate_roots(Fs, 1e-9);
  REQUIRE(found.size() == 3);
  CHECK(found[0].contains(-std::sqrt(3.0) / 2.0));
  CHECK(found[1].contains(0.0));
  CHECK(found[2].contains(std::sqrt(3.0)));
  for (const auto& r : found) CHECK(r.transversal);
}

TEST_CASE("refine_root shrinks an isolating interval") {
  const ScalarFn F = ScalarFn::poly({0.0, -1.0, 0.0, 1.0 / 3.0});
  const auto found = roots::isolate_roots(F, 1e-2);
  const auto r = roots::refine_root(F, found[2], 1e-12);
  CHECK(r.width() <= 1e-12);
  CHECK(r.contains(std::sqrt(3.0)));
}

TEST_CASE("property: isolation matches a dense sign scan on random integer polynomials") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> deg(1, 10);
  std::uniform_int_distribution<int> coef(-9, 9);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (double& v : c) v = coef(rng);
    if (c.back() == 0.0) c.back() = 1.0;
    const Polynomial p(c);
    const double R = roots::default_search_radius(p);
    const auto found = roots::isolate_roots(p, -R, R, 1e-6);

    bool close_pair = false;
    for (std::size_t i = 1; i < found.size(); ++i) close_pair |= found[i].lo - found[i - 1].hi < 3e-4;
    if (close_pair) continue;

    const auto scan = scan_sign_changes(p, -R, R, 1e-4);
    std::size_t sign_changing = 0;
    for (const auto& r : found) sign_changing += r.sign_before != r.sign_after;
    CHECK(sign_changing == scan.size());
    for (double x : scan) {
      int hits = 0;
      for (const auto& r : found) hits += (r.lo - 1e-4 <= x && x <= r.hi + 1e-4);
      CHECK(hits == 1);
    }

    // Refinement never changes the count.
    CHECK(roots::isolate_roots(p, -R, R, 5e-7).size() == found.size());

    // Additivity of Sturm counts.
    const auto s = roots::sturm_sequence(p);
    const double a = -R - 0.123, b = 0.0371, cc = R + 0.5;
    CHECK(roots::count_roots(s, a, b) + roots::count_roots(s, b, cc) == roots::count_roots(s, a, cc));
    ++checked;
  }
  CHECK(checked > 40);
}
