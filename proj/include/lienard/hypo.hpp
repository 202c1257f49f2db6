#pragma once

// Structural hypotheses on a Lienard system and the verdict they support.
//
//   B   g(0) = 0, x g(x) > 0 for x != 0, and x F(x) < 0 for small |x| != 0
//   C   F has exactly three transversal zeros x2 < 0 = x0 < x1 and is
//       monotone increasing outside [x2, x1]
//   D   G(x1) = G(x2)
//   E   limsup_{x -> +inf} G + F = +inf and limsup_{x -> -inf} G - F = +inf
//   D'  G(x1) > G(x2) and F(x) >= sqrt(2 G(x1)) for some x in (x2, 0)
//   D'' G(x1) < G(x2) and F(x) <= -sqrt(2 G(x2)) for some x in (0, x1)

#include <optional>
#include <string>
#include <vector>

#include "lienard/funcs.hpp"
#include "lienard/roots.hpp"

namespace lienard::hypo {

enum class Tri { Holds, Fails, Unknown, NotApplicable };

enum class Verdict { UniqueStableCycle, UniqueCycleViaDPrime, AtMostOneCrossingCycle, NoVerdict };

/// Which of the lines x = x1, x = x2 every limit cycle must cross.
enum class Crossing { MustCrossX2, MustCrossX1, MustCrossBoth, None };

std::string to_string(Tri t);
std::string to_string(Verdict v);
std::string to_string(Crossing c);

inline constexpr double kDefaultTolD = 1e-9;

struct Options {
  double tol_D = kDefaultTolD;
  /// Tolerate zeros of F inside (x2, x1) at which F does not change sign.
  bool relaxed_C = false;
};

struct BResult {
  Tri status = Tri::Unknown;
  std::string reason;
};

struct CResult {
  Tri status = Tri::Unknown;
  std::optional<roots::RootInterval> x2, x1;
  std::vector<roots::RootInterval> zeros;  ///< every zero of F found on the default range
  std::string reason;
};

struct DResult {
  Tri status = Tri::NotApplicable;
  double gap = 0.0;          ///< G(x1) - G(x2)
  double uncertainty = 0.0;  ///< bound on |gap error| from the root interval widths
  double G_x1 = 0.0;
  double G_x2 = 0.0;
  double tol = kDefaultTolD;
};

struct EResult {
  Tri status = Tri::Unknown;
  std::string reason;
};

/// D' or D''.
struct PrimeResult {
  Tri status = Tri::NotApplicable;
  std::optional<double> witness;  ///< x2* for D', x1* for D''
  double extremum = 0.0;          ///< max F on (x2, 0), or min F on (0, x1)
  double threshold = 0.0;         ///< sqrt(2 G(x1)), or -sqrt(2 G(x2))
};

struct HypothesisReport {
  BResult B;
  CResult C;
  DResult D;
  EResult E;
  PrimeResult Dprime;
  PrimeResult Ddoubleprime;
  Verdict verdict = Verdict::NoVerdict;
  Crossing must_cross = Crossing::None;
  bool existence_expected = false;
  std::vector<std::string> notes;
};

BResult check_B(const funcs::LienardSystem& sys);
CResult check_C(const funcs::LienardSystem& sys, bool relaxed = false);
/// Refines x2, x1 to width tol / (1 + max|g|) before comparing G.
DResult check_D(const funcs::LienardSystem& sys, const roots::RootInterval& x2, const roots::RootInterval& x1,
                double tol = kDefaultTolD);
EResult check_E(const funcs::LienardSystem& sys);
/// Not applicable unless G(x1) > G(x2) beyond the D tolerance.
PrimeResult check_Dprime(const funcs::LienardSystem& sys, const roots::RootInterval& x2,
                         const roots::RootInterval& x1, const DResult& d);
/// Not applicable unless G(x1) < G(x2) beyond the D tolerance.
PrimeResult check_Ddoubleprime(const funcs::LienardSystem& sys, const roots::RootInterval& x2,
                               const roots::RootInterval& x1, const DResult& d);

/// Reason for failure, if x F(x) < 0 does not hold for small |x| != 0.
std::optional<std::string> xF_negative_near_zero(const funcs::ScalarFn& F);

/// Reason for failure, if F' changes sign or is eventually negative on
/// (x1, inf) or (-inf, x2).
std::optional<std::string> increasing_outside(const funcs::ScalarFn& F, double x2, double x1);

/// Direction from the sign of the gap; None without C data.
Crossing crossing_direction(const DResult& d);

HypothesisReport analyze(const funcs::LienardSystem& sys, const Options& opts = {});

}  // namespace lienard::hypo
