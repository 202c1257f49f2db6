#pragma once

// First-order averaging for x'' + eps f(x) x' + x = 0.
//
//   Fbar(rho) = int_0^{2 pi} rho f(rho cos t) sin^2 t dt = sum_l a_{2l} I_{2l} rho^{2l+1}
//   I_{2k}    = int_0^{2 pi} sin^2 t cos^{2k} t dt
//
// Positive simple zeros of Fbar approximate the radii of limit cycles.

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "lienard/funcs.hpp"

namespace lienard::avg {

inline constexpr int kMaxMomentIndex = 30;

/// I_{2k} / pi as an exact rational.
mpq_class wallis_moment_over_pi(int k);

/// I_{2k}. Throws InputError for k outside [0, 30].
double wallis_moment(int k);

struct AveragedAmplitude {
  funcs::Polynomial fbar;                           ///< polynomial in rho, odd powers only
  std::vector<std::pair<int, double>> moments_used; ///< (k, I_{2k}) for each even term of f
};

AveragedAmplitude averaged_amplitude(const funcs::Polynomial& f);

struct PredictedCycle {
  double radius = 0.0;
  double fbar_slope = 0.0;  ///< Fbar'(radius)
  bool stable_hint = false; ///< Fbar' > 0 for eps > 0
};

struct Prediction {
  bool degenerate = false;  ///< Fbar vanishes identically
  funcs::Polynomial fbar;
  std::vector<PredictedCycle> cycles;
};

/// Positive simple zeros of Fbar, each to width <= 1e-12.
Prediction predict_cycles(const funcs::Polynomial& f);

/// Even coefficients a_0, a_2, a_4, a_6 with a_{2l} I_{2l} = -4/81, 49/81, -14/9, 1,
/// so that Fbar(rho) = rho (rho^2 - 1/9)(rho^2 - 4/9)(rho^2 - 1).
funcs::Polynomial three_cycle_friction(double A = 0.0, double B = 0.0);

/// Default odd coefficients: with them F = int f is
/// (x / pi)(-4/81 + 196/243 x^2 - 112/45 x^4 + 64/35 x^6 + x/200 + x^3/2).
double default_A();
double default_B();

/// f scaled by eps, g = x.
funcs::LienardSystem duff_levinson_system(double eps, double A, double B);
funcs::LienardSystem duff_levinson_system(double eps);

}  // namespace lienard::avg
