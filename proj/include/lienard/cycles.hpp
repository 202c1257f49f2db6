#pragma once

// Limit cycles through the return map on the half-line {y = 0, x > 0}.
// Orbits turn clockwise, so the map follows (x0, 0) to the next downward
// crossing of the positive x-axis.

#include <optional>
#include <string>
#include <vector>

#include "lienard/funcs.hpp"
#include "lienard/hypo.hpp"
#include "lienard/ode.hpp"

namespace lienard::cycles {

enum class Stability { Stable, Unstable, Neutral };

std::string to_string(Stability s);

struct Options {
  ode::Options ode;
  double max_time = 1000.0;      ///< give up on a return after this long
  double zero_band = 1e-8;       ///< |d(x)| <= zero_band * x counts as zero displacement
  double bisect_rel = 1e-8;      ///< brackets are bisected to width <= bisect_rel * x
  double fd_rel = 1e-5;          ///< finite-difference step for the map derivative, relative to x
  double neutral_band = 1e-4;    ///< |P'(x) - 1| <= neutral_band is neutral
  unsigned jobs = 1;             ///< threads for the grid evaluation
};

struct ReturnMapSample {
  double x_in = 0.0;
  double x_out = 0.0;
  double period = 0.0;
  bool returned = false;
  std::string failure;  ///< why there is no return, when returned is false

  double displacement() const noexcept { return x_out - x_in; }
};

ReturnMapSample return_map(const funcs::LienardSystem& sys, double x0, const Options& opts = {});

struct StabilityResult {
  Stability stability = Stability::Neutral;
  double derivative = 1.0;  ///< central difference of the return map
};

StabilityResult classify_stability(const funcs::LienardSystem& sys, double x_fixed, const Options& opts = {});

/// One revolution from (x_fixed, 0) with the integrals of g and g F along it.
struct OrbitIntegrals {
  double period = 0.0;
  double x_return = 0.0;
  double integral_g = 0.0;
  double integral_gF = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
};

OrbitIntegrals cycle_integrals(const funcs::LienardSystem& sys, double x_fixed, const Options& opts = {});

/// The lines x = x2 < 0 < x1 used for the intersection flags.
struct CrossingLines {
  double x2 = 0.0;
  double x1 = 0.0;
};

struct CycleRecord {
  double x_fixed = 0.0;
  double period = 0.0;
  Stability stability = Stability::Neutral;
  double map_derivative = 1.0;
  double residual = 0.0;  ///< return_map(x_fixed).x_out - x_fixed
  double x_min = 0.0;
  double x_max = 0.0;
  std::optional<bool> crosses_x1, crosses_x2;
  double integral_g = 0.0;
  double integral_gF = 0.0;
};

struct SearchResult {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::vector<ReturnMapSample> grid;
  std::vector<CycleRecord> cycles;
  std::vector<std::string> notes;  ///< grid gaps and ambiguous brackets
};

/// Grid of n_grid points on [x_lo, x_hi], sign changes of the displacement
/// bisected to fixed points, one record per fixed point.
SearchResult find_cycles(const funcs::LienardSystem& sys, double x_lo, double x_hi, int n_grid,
                         const Options& opts = {}, std::optional<CrossingLines> lines = std::nullopt);

/// Default search range: x_hi = 2 (1 + max(|x1|, |x2|)) when C holds, else 10;
/// x_lo = x_hi / 100.
std::pair<double, double> default_range(const hypo::HypothesisReport& rep);

std::optional<CrossingLines> lines_from(const hypo::HypothesisReport& rep);

struct CrossingCounts {
  int total = 0;
  int both = 0;
  int only_x1 = 0;
  int only_x2 = 0;
  int neither = 0;
};

CrossingCounts count_crossings(const std::vector<CycleRecord>& records);

struct CrossingCheck {
  std::size_t index = 0;
  bool pass = true;
  double x_min = 0.0;
  double x_max = 0.0;
};

/// Each record must cross the line(s) the direction demands. An empty list
/// passes vacuously.
std::vector<CrossingCheck> verify_crossings(const std::vector<CycleRecord>& records, hypo::Crossing direction);

/// Closed-orbit samples through (x_fixed, 0) for plotting, n points evenly spaced in time.
std::vector<ode::State> closed_orbit(const funcs::LienardSystem& sys, double x_fixed, int n,
                                     const Options& opts = {});

}  // namespace lienard::cycles
