#pragma once

// Certified real-root isolation with Sturm sequences.
//
// Double coefficients are converted to rationals exactly (every finite double
// is a dyadic rational), so chains and sign evaluations are exact and the
// isolating intervals are certificates for the polynomial as stored.

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "lienard/funcs.hpp"

namespace lienard::roots {

/// Polynomial over Q, ascending coefficients, no trailing zeros.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coeffs);
  /// Exact conversion of every double coefficient.
  explicit RationalPolynomial(const funcs::Polynomial& p);

  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const mpq_class& leading() const { return coeffs_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  /// Exact sign of p(x) for a double x.
  int sign_at(double x) const;
  int sign_at_pos_inf() const;
  int sign_at_neg_inf() const;

  RationalPolynomial derivative() const;
  RationalPolynomial operator-() const;
  /// Returns (quotient, remainder) of Euclidean division; divisor nonzero.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& divisor) const;

  /// Nearest-double coefficients.
  funcs::Polynomial to_double() const;

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void cache_approx();

  std::vector<mpq_class> coeffs_;
  std::vector<double> approx_;  // nearest doubles, for the filtered sign test
};

/// Monic greatest common divisor (zero if both inputs are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// p / gcd(p, p'): same distinct roots, all simple.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// Sturm chain p0 = squarefree part of the input, p1 = p0', p_{k+1} = -rem(p_{k-1}, p_k).
struct SturmSequence {
  std::vector<RationalPolynomial> chain;

  std::vector<funcs::Polynomial> polys() const;
  int variations_at(double x) const;
  int variations_at_pos_inf() const;
  int variations_at_neg_inf() const;
};

/// Throws InputError for the zero polynomial.
SturmSequence sturm_sequence(const funcs::Polynomial& p);
SturmSequence sturm_sequence(const RationalPolynomial& p);

/// Number of distinct real roots in (a, b]. If a is itself a root it is nudged
/// upward to the next double (a few times at most); a root at b is counted.
/// Throws InputError unless a < b, NumericalError if the nudge fails.
int count_roots(const SturmSequence& s, double a, double b);
/// Distinct real roots in (a, +inf).
int count_roots_above(const SturmSequence& s, double a);
/// Distinct real roots in (-inf, b].
int count_roots_below(const SturmSequence& s, double b);
/// All distinct real roots.
int count_real_roots(const SturmSequence& s);

/// Isolating interval of one real zero.
struct RootInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool transversal = false;
  int sign_before = 0;  ///< sign of the function at lo
  int sign_after = 0;   ///< sign of the function at hi

  double midpoint() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Relative transversality threshold: |fn'(mid)| > kTransversalityTol * (1 + max|fn'| on range).
inline constexpr double kTransversalityTol = 1e-9;

/// R = 1 + max(1, Cauchy bound); all roots lie in [-R, R].
double default_search_radius(const funcs::Polynomial& p);
double default_search_radius(const funcs::ScalarFn& fn);

/// Isolates every distinct real zero of p in the closed range [lo, hi], each
/// to an interval of width <= width. Intervals are sorted and disjoint.
std::vector<RootInterval> isolate_roots(const funcs::Polynomial& p, double lo, double hi, double width);

/// Piecewise version: the two half-line polynomials are isolated separately
/// with x = 0 as split point; a zero exactly at 0 belongs to the right piece.
std::vector<RootInterval> isolate_roots(const funcs::ScalarFn& fn, double lo, double hi, double width);

/// Same on the default range [-R, R].
std::vector<RootInterval> isolate_roots(const funcs::ScalarFn& fn, double width);

/// Shrinks an isolating interval of fn to width <= width.
RootInterval refine_root(const funcs::ScalarFn& fn, const RootInterval& root, double width);

}  // namespace lienard::roots
