#pragma once

// Deformations that turn a system satisfying B, C and E into one that also
// satisfies D:
//
//   g_lambda   g scaled by lambda* = G(x1)/G(x2) on x < 0
//   F_scale    F(lambda* x) on x < 0, with G(x2 / lambda*) = G(x1)
//   poly       F = P(x) - lambda x for lambda above the tangent-slope bound,
//              then g balanced on x < 0
//   tilt       F = int f - lambda x for the first lambda in a doubling sequence
//              at which C holds (bisected down when a smaller value failed),
//              then g balanced on x < 0

#include <optional>
#include <string>
#include <utility>

#include "lienard/funcs.hpp"
#include "lienard/hypo.hpp"

namespace lienard::deform {

struct Options {
  double tol_D = hypo::kDefaultTolD;
  double margin = 1e-3;       ///< lambda = lambda_bar (1 + margin) + margin
  int max_retries = 8;        ///< lambda *= (1 + 1e-3) while C fails
  double lambda_cap = 1e12;   ///< give up the tilt search above this
  int bisection_steps = 12;   ///< refinement of the first passing tilt bracket
};

struct DeformOutcome {
  std::string kind;
  funcs::LienardSystem system;
  double parameter = 1.0;          ///< lambda*, lambda or mu depending on kind
  std::optional<double> mu;        ///< balancing factor of g (poly and tilt)
  std::optional<double> x2_star;   ///< new negative zero of F (F_scale)
  std::optional<double> lambda_bar;
  hypo::HypothesisReport certificate;
};

DeformOutcome deform_g_lambda(const funcs::LienardSystem& sys, const Options& opts = {});
DeformOutcome deform_F_scale(const funcs::LienardSystem& sys, const Options& opts = {});

struct Thresholds {
  double xi_plus = 0.0;
  /// Never set for odd degree and positive leading coefficient: P'' < 0 for
  /// all sufficiently negative y, so no point has P', P'' > 0 to its left.
  std::optional<double> xi_minus;
  std::string xi_minus_reason;
};

/// xi+ = max(0, largest positive zero of P', largest positive zero of P'').
Thresholds poly_thresholds(const funcs::Polynomial& P);

struct LambdaBar {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;  ///< lambda_plus of Q(x) = -P(-x)
  double xi_plus = 0.0;
  double xi_plus_reflected = 0.0;

  double value() const noexcept { return lambda_plus > lambda_minus ? lambda_plus : lambda_minus; }
};

/// lambda_plus = max(0, P'(0), P(xi+)/xi+, |P'(t)| over t in (0, xi+) with P(t) = t P'(t)).
LambdaBar poly_lambda_bar(const funcs::Polynomial& P);

/// g_mu = g on x >= 0 and mu g on x < 0, mu = G(x1)/G(x2).
std::pair<funcs::ScalarFn, double> build_g_mu(const funcs::ScalarFn& g, double x2, double x1);

DeformOutcome poly_deform(const funcs::Polynomial& P, const funcs::ScalarFn& g, const Options& opts = {});

DeformOutcome tilt_pipeline(const funcs::ScalarFn& f, const funcs::ScalarFn& g, const Options& opts = {});

struct CenterCheck {
  bool pass = false;
  std::string failed;  ///< name of the first failing condition
};

/// Whether friction F turns the center x'' + g(x) = 0 with G(x2) = G(x1)
/// into a system with a unique stable cycle.
CenterCheck center_perturbation_check(const funcs::ScalarFn& g, const funcs::ScalarFn& F, double x2, double x1,
                                      double tol = hypo::kDefaultTolD);

}  // namespace lienard::deform
