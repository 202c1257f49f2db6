#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lienard/errors.hpp"
#include "lienard/funcs.hpp"

using namespace lienard;
using funcs::FnKind;
using funcs::Polynomial;
using funcs::ScalarFn;

namespace {

Polynomial random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (double& v : c) v = coef(rng);
  return Polynomial(c);
}

}  // namespace

TEST_CASE("polynomial storage trims trailing zeros") {
  Polynomial p({1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(Polynomial({0.0, 0.0}).is_zero());
  CHECK(Polynomial({0.0}).degree() == -1);
}

TEST_CASE("eval of the basic variants") {
  const ScalarFn id = ScalarFn::poly({0.0, 1.0});
  CHECK(funcs::eval(id, 3.0) == 3.0);

  const ScalarFn scaled = ScalarFn::neg_half_factor(id, 2.0);
  CHECK(funcs::eval(scaled, -1.0) == -2.0);
  CHECK(funcs::eval(scaled, 1.0) == 1.0);

  const ScalarFn arg = ScalarFn::neg_half_arg_scale(ScalarFn::poly({0.0, 0.0, 1.0}), 3.0);
  CHECK(arg(-1.0) == doctest::Approx(9.0));
  CHECK(arg(2.0) == doctest::Approx(4.0));

  CHECK(ScalarFn::subtract_const(id, 1.5)(2.0) == doctest::Approx(0.5));
  CHECK(ScalarFn::subtract_linear(ScalarFn::poly({0.0, 0.0, 1.0}), 2.0)(3.0) == doctest::Approx(3.0));

  CHECK_THROWS_AS(funcs::eval(id, std::nan("")), InputError);
  CHECK_THROWS_AS(ScalarFn::neg_half_factor(id, 0.0), InputError);
  CHECK_THROWS_AS(ScalarFn::neg_half_arg_scale(id, -1.0), InputError);
}

TEST_CASE("counterexample F changes sign across [0.247, 0.248]") {
  const double pi = std::numbers::pi;
  const ScalarFn F = ScalarFn::poly(
      (1.0 / pi) * Polynomial({0.0, -4.0 / 81.0, 1.0 / 200.0, 196.0 / 243.0, 0.5, -112.0 / 45.0, 0.0,
                               64.0 / 35.0}));
  CHECK(F(0.247) < 0.0);
  CHECK(F(0.248) > 0.0);
}

TEST_CASE("primitive examples") {
  const ScalarFn G = funcs::primitive(ScalarFn::poly({0.0, 1.0}));
  REQUIRE(G.kind() == FnKind::Poly);
  CHECK(G.polynomial() == Polynomial({0.0, 0.0, 0.5}));

  const ScalarFn Gl = funcs::primitive(ScalarFn::neg_half_factor(ScalarFn::poly({0.0, 1.0}), 4.0));
  CHECK(Gl.kind() == FnKind::NegHalfFactor);
  CHECK(Gl(1.5) == doctest::Approx(1.125));
  CHECK(Gl(-1.5) == doctest::Approx(2.0 * 2.25));

  // f = x^2 - 1, lambda = 1  ->  F = x^3/3 - 2x
  const ScalarFn Fl = funcs::primitive(ScalarFn::subtract_const(ScalarFn::poly({-1.0, 0.0, 1.0}), 1.0));
  CHECK(Fl.kind() == FnKind::SubtractLinear);
  for (double x : {-2.0, -0.3, 0.0, 0.7, 3.0}) CHECK(Fl(x) == doctest::Approx(x * x * x / 3.0 - 2.0 * x));

  // sub_linear over a poly integrates to a poly.
  const ScalarFn P = funcs::primitive(ScalarFn::subtract_linear(ScalarFn::poly({0.0, 0.0, 3.0}), 2.0));
  REQUIRE(P.kind() == FnKind::Poly);
  CHECK(P.polynomial() == Polynomial({0.0, 0.0, -1.0, 1.0}));
}

TEST_CASE("primitive rejects unsupported variants by name") {
  const ScalarFn base = ScalarFn::poly({0.0, 1.0});
  try {
    funcs::primitive(ScalarFn::neg_half_arg_scale(base, 2.0));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("neg_argscale") != std::string::npos);
  }
  CHECK_THROWS_AS(funcs::primitive(ScalarFn::subtract_linear(ScalarFn::neg_half_factor(base, 2.0), 1.0)),
                  InputError);
}

TEST_CASE("derivative examples") {
  const ScalarFn d = funcs::derivative(ScalarFn::poly({0.0, 0.0, 1.0}));
  CHECK(d.polynomial() == Polynomial({0.0, 2.0}));

  const ScalarFn P = ScalarFn::poly({1.0, -3.0, 0.0, 1.0});
  const ScalarFn dl = funcs::derivative(ScalarFn::subtract_linear(P, 0.5));
  REQUIRE(dl.kind() == FnKind::SubtractConst);
  CHECK(dl.parameter() == 0.5);
  CHECK(dl.base().polynomial() == Polynomial({-3.0, 0.0, 3.0}));

  // d/dx F(lambda x) = lambda F'(lambda x) on the left half.
  const ScalarFn scaled = ScalarFn::neg_half_arg_scale(P, 2.0);
  const ScalarFn ds = funcs::derivative(scaled);
  for (double x : {-1.3, -0.2, 0.4, 1.1}) {
    const double h = 1e-6;
    CHECK(ds(x) == doctest::Approx((scaled(x + h) - scaled(x - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("property: derivative(primitive(p)) == p") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial p = random_poly(rng, 10);
    const Polynomial back = funcs::derivative(funcs::primitive(ScalarFn::poly(p))).polynomial();
    REQUIRE(back.degree() == p.degree());
    for (int k = 0; k <= p.degree(); ++k)
      CHECK(std::abs(back.coeff(k) - p.coeff(k)) <= 1e-12 * std::abs(p.coeff(k)));
  }
}

TEST_CASE("property: primitives vanish at 0, neg_factor agrees on x >= 0, continuity at 0") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> lam(0.1, 5.0);
  std::uniform_real_distribution<double> xs(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial p = random_poly(rng, 8);
    const Polynomial p0 = p - Polynomial::constant(p(0.0));  // base(0) = 0
    const ScalarFn base = ScalarFn::poly(p0);
    const double l = lam(rng);
    const std::vector<ScalarFn> fns = {
        base, ScalarFn::neg_half_factor(base, l), ScalarFn::subtract_const(base, l),
        ScalarFn::subtract_linear(base, l)};
    for (const auto& fn : fns) CHECK(funcs::primitive(fn)(0.0) == 0.0);

    const ScalarFn nf = ScalarFn::neg_half_factor(base, l);
    const ScalarFn na = ScalarFn::neg_half_arg_scale(base, l);
    for (int i = 0; i < 10; ++i) {
      const double x = xs(rng);
      CHECK(nf(x) == base(x));
      CHECK(na(x) == base(x));
    }
    for (const auto& fn : {nf, na}) CHECK(std::abs(fn(-1e-13) - fn(1e-13)) <= 1e-10);
  }
}

TEST_CASE("pieces follow the transform semantics") {
  const ScalarFn F = ScalarFn::poly({0.0, -1.0, 0.5, 1.0});
  const ScalarFn T =
      ScalarFn::subtract_linear(ScalarFn::neg_half_factor(ScalarFn::neg_half_arg_scale(F, 1.7), 0.3), 0.2);
  CHECK(T.depth() == 4);
  CHECK(T.piecewise());
  for (double x : {-2.0, -0.5, -1e-3, 0.0, 0.4, 2.5}) CHECK(T.pieces().at(x)(x) == doctest::Approx(T(x)));
  CHECK_FALSE(ScalarFn::subtract_const(F, 1.0).piecewise());
}

TEST_CASE("LienardSystem derives F, G and f") {
  const auto sys = funcs::LienardSystem::from_friction(ScalarFn::poly({-1.0, 0.0, 1.0}),
                                                       ScalarFn::poly({0.0, 1.0}));
  CHECK(sys.friction_given());
  CHECK(sys.F()(0.0) == 0.0);
  CHECK(sys.G()(0.0) == 0.0);
  CHECK(sys.F()(std::sqrt(3.0)) == doctest::Approx(0.0));
  for (double x : {-1.5, 0.3, 2.0}) {
    const double h = 1e-6;
    CHECK((sys.F()(x + h) - sys.F()(x - h)) / (2 * h) == doctest::Approx(sys.f()(x)).epsilon(1e-8));
  }

  const auto fsys = funcs::LienardSystem::from_primitive(
      ScalarFn::neg_half_arg_scale(ScalarFn::poly({0.0, -1.0, 0.0, 1.0 / 3.0}), 2.0),
      ScalarFn::poly({0.0, 1.0}));
  CHECK_FALSE(fsys.friction_given());
  CHECK(fsys.piecewise());
  CHECK(fsys.f()(-0.5) == doctest::Approx(2.0 * (1.0 - 1.0)));  // 2*(x^2-1) at 2x = -1
  CHECK_THROWS_AS(funcs::LienardSystem::from_primitive(ScalarFn::poly({1.0, 1.0}), ScalarFn::poly({0.0, 1.0})),
                  InputError);
}
