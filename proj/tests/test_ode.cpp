#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lienard/errors.hpp"
#include "lienard/ode.hpp"

using namespace lienard;
using funcs::LienardSystem;
using funcs::Polynomial;
using funcs::ScalarFn;
using ode::Direction;
using ode::Section;
using ode::State;

namespace {

constexpr double kPi = std::numbers::pi;

LienardSystem center(const ScalarFn& g = ScalarFn::poly({0.0, 1.0})) {
  return LienardSystem::from_primitive(ScalarFn{}, g);
}

LienardSystem van_der_pol(double mu = 1.0) {
  return LienardSystem::from_friction(ScalarFn::poly({-mu, 0.0, mu}), ScalarFn::poly({0.0, 1.0}));
}

double energy(const LienardSystem& sys, double x, double y) { return 0.5 * y * y + sys.G()(x); }

}  // namespace

TEST_CASE("vector_field examples") {
  auto [dx, dy] = ode::vector_field(center(), 1.0, 0.0);
  CHECK(dx == 0.0);
  CHECK(dy == -1.0);

  auto [ox, oy] = ode::vector_field(van_der_pol(), 0.0, 0.0);
  CHECK(ox == 0.0);
  CHECK(oy == 0.0);

  const double x1 = std::sqrt(3.0);
  auto [ax, ay] = ode::vector_field(van_der_pol(), x1, 0.0);
  CHECK(std::abs(ax) < 1e-15);
  CHECK(ay == doctest::Approx(-x1));
}

TEST_CASE("center system returns to its start after one period") {
  const auto traj = ode::integrate(center(), {0.0, 1.0, 0.0}, 2.0 * kPi);
  const State& end = traj.samples.back();
  CHECK(end.t == 2.0 * kPi);
  CHECK(std::abs(end.x - 1.0) < 1e-8);
  CHECK(std::abs(end.y) < 1e-8);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  CHECK(traj.stats.accepted + 1 == traj.samples.size());
}

TEST_CASE("property: conservation of y^2/2 + G on random centers") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> a(0.2, 3.0), b(0.0, 1.0), c(-0.5, 0.5);
  for (int trial = 0; trial < 10; ++trial) {
    // g = x (a + c x + b x^2) with c^2 < 4ab keeps x g(x) > 0
    const double ga = a(rng), gb = b(rng) + 0.05;
    double gc = c(rng);
    if (gc * gc >= 4 * ga * gb) gc = 0.0;
    const auto sys = center(ScalarFn::poly({0.0, ga, gc, gb}));
    const State init{0.0, 0.5 + b(rng), 0.3 * c(rng)};
    const double L0 = energy(sys, init.x, init.y);
    const double T = 20.0;
    const auto traj = ode::integrate(sys, init, T);
    double drift = 0.0;
    for (const auto& s : traj.samples) drift = std::max(drift, std::abs(energy(sys, s.x, s.y) - L0));
    CHECK(drift / T <= 1e-9 * (1.0 + L0));
  }
}

TEST_CASE("halving the tolerance reduces the endpoint error on the center system") {
  const auto sys = center();
  auto endpoint_error = [&](double tol) {
    ode::Options o;
    o.abs_tol = o.rel_tol = tol;
    const auto end = ode::integrate(sys, {0.0, 1.0, 0.0}, 10.0 * kPi, o).samples.back();
    return std::hypot(end.x - 1.0, end.y);
  };
  for (double tol : {1e-5, 1e-6, 1e-7}) CHECK(endpoint_error(tol) / endpoint_error(tol / 2) >= 2.0);
}

TEST_CASE("van der Pol origin is a repellor and orbits turn clockwise") {
  const auto sys = van_der_pol();
  const auto traj = ode::integrate(sys, {0.0, 0.01, 0.0}, 30.0);
  const auto& end = traj.samples.back();
  CHECK(std::hypot(end.x, end.y) > 0.5);

  // Starting on the +x axis: the line x = 0 is crossed first below the axis,
  // then above it, and only then does the orbit come back to the +x axis.
  const State s{0.0, 0.5, 0.0};
  const auto down = ode::next_section_crossing(sys, s, Section::vertical_line(0.0), Direction::Either, 50.0);
  REQUIRE(down);
  CHECK(down->y < 0.0);
  const auto up = ode::next_section_crossing(sys, *down, Section::vertical_line(0.0), Direction::Either, 50.0);
  REQUIRE(up);
  CHECK(up->y > 0.0);
  const auto back = ode::next_section_crossing(sys, s, Section::positive_x_axis(), Direction::Either, 50.0);
  REQUIRE(back);
  CHECK(back->t > up->t);
}

TEST_CASE("energy grows inside the strip between the roots of F") {
  const auto sys = van_der_pol();
  const auto traj = ode::integrate(sys, {0.0, 0.2, 0.0}, 40.0);
  const double x1 = std::sqrt(3.0);
  int checked = 0;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i - 1];
    const auto& b = traj.samples[i];
    if (std::abs(a.x) < x1 && std::abs(b.x) < x1) {
      CHECK(energy(sys, b.x, b.y) >= energy(sys, a.x, a.y) - 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("next_section_crossing on the harmonic oscillator") {
  const auto sys = center();
  const auto hit = ode::next_section_crossing(sys, {0.0, 1.0, 0.0}, Section::positive_x_axis(),
                                              Direction::Decreasing, 20.0);
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  CHECK(hit->x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(hit->y) <= 1e-10);

  // x = cos t meets x = 1/2 decreasing at pi/3; the increasing crossing is at 5pi/3.
  const auto inc = ode::next_section_crossing(sys, {0.0, 1.0, 0.0}, Section::vertical_line(0.5),
                                              Direction::Increasing, 20.0);
  REQUIRE(inc);
  CHECK(inc->t == doctest::Approx(5.0 * kPi / 3.0).epsilon(1e-9));
  CHECK(std::abs(inc->x - 0.5) <= 1e-10);

  CHECK_FALSE(ode::next_section_crossing(sys, {0.0, 1.0, 0.0}, Section::vertical_line(5.0), Direction::Either, 20.0));
}

TEST_CASE("van der Pol trajectory from (3, 0) crosses x = sqrt3") {
  ode::Options o;
  o.abs_tol = o.rel_tol = 1e-10;
  const auto hit = ode::next_section_crossing(van_der_pol(), {0.0, 3.0, 0.0}, Section::vertical_line(std::sqrt(3.0)),
                                              Direction::Either, 50.0, o);
  REQUIRE(hit);
  CHECK(std::abs(hit->x - std::sqrt(3.0)) <= 1e-10);
}

TEST_CASE("breakpoint handling on a piecewise center") {
  // g = x on the right, 4x on the left: half periods pi and pi/2.
  const auto sys = center(ScalarFn::neg_half_factor(ScalarFn::poly({0.0, 1.0}), 4.0));
  REQUIRE(sys.piecewise());
  const auto hit = ode::next_section_crossing(sys, {0.0, 1.0, 0.0}, Section::positive_x_axis(),
                                              Direction::Decreasing, 20.0);
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(1.5 * kPi).epsilon(1e-9));
  CHECK(hit->x == doctest::Approx(1.0).epsilon(1e-9));
  const auto traj = ode::integrate(sys, {0.0, 1.0, 0.0}, 1.5 * kPi);
  CHECK(traj.stats.breakpoint_landings >= 2);
}

TEST_CASE("divergence and bad input are reported") {
  const auto saddle = center(ScalarFn::poly({0.0, -1.0}));
  CHECK_THROWS_AS(ode::integrate(saddle, {0.0, 1.0, 1.0}, 100.0), ode::IntegrationError);
  CHECK_THROWS_AS(ode::integrate(center(), {0.0, 1.0, 0.0}, 0.0), InputError);
  CHECK_THROWS_AS(ode::integrate(center(), {0.0, std::nan(""), 0.0}, 1.0), InputError);
}
