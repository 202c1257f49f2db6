#pragma once

// Scalar functions of one real variable used to describe Lienard systems
//   x'' + f(x) x' + g(x) = 0,   x' = y - F(x),  y' = -g(x).
//
// Every ScalarFn is a polynomial core wrapped in zero or more of the four
// transforms the deformation constructors need. All of them are polynomial on
// each half-line x < 0 and x >= 0, which is what makes exact root isolation and
// symbolic primitives possible.

#include <memory>
#include <string>
#include <vector>

namespace lienard::funcs {

/// Real polynomial with coefficients in ascending degree. The highest stored
/// coefficient is nonzero unless the polynomial is identically zero, in which
/// case `coeffs()` is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs)
      : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, double c = 1.0);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  double coeff(int k) const noexcept;
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  /// Horner evaluation.
  double operator()(double x) const noexcept;

  Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  Polynomial primitive() const;
  /// q(x) = p(s x).
  Polynomial scaled_argument(double s) const;

  /// Sign of p(x) as x -> +inf / -inf (0 for the zero polynomial).
  int sign_at_pos_inf() const noexcept;
  int sign_at_neg_inf() const noexcept;

  /// Cauchy bound: every real root lies in [-bound, bound].
  double cauchy_bound() const;

  bool is_odd() const noexcept;
  bool is_even() const noexcept;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

enum class FnKind { Poly, NegHalfFactor, NegHalfArgScale, SubtractConst, SubtractLinear };

std::string to_string(FnKind kind);

/// Restriction of a ScalarFn to the two half-lines. `negative` is valid for
/// x < 0, `nonnegative` for x >= 0.
struct Pieces {
  Polynomial negative;
  Polynomial nonnegative;

  const Polynomial& at(double x) const noexcept { return x < 0.0 ? negative : nonnegative; }
  bool split() const noexcept { return !(negative == nonnegative); }
};

/// Immutable expression tree:
///   Poly(p)                      p(x)
///   NegHalfFactor(h, lambda)     lambda*h(x) for x < 0, h(x) otherwise
///   NegHalfArgScale(h, lambda)   h(lambda*x) for x < 0, h(x) otherwise
///   SubtractConst(h, c)          h(x) - c
///   SubtractLinear(h, c)         h(x) - c*x
/// Copies share the tree; values are safe to use from several threads.
class ScalarFn {
 public:
  /// The zero polynomial.
  ScalarFn();

  static ScalarFn poly(Polynomial p);
  static ScalarFn neg_half_factor(ScalarFn base, double lambda);
  static ScalarFn neg_half_arg_scale(ScalarFn base, double lambda);
  static ScalarFn subtract_const(ScalarFn base, double c);
  static ScalarFn subtract_linear(ScalarFn base, double c);

  FnKind kind() const noexcept;
  /// Polynomial core; only valid for kind() == Poly.
  const Polynomial& polynomial() const;
  /// Wrapped function; only valid for transform kinds.
  const ScalarFn& base() const;
  /// lambda or c of a transform node.
  double parameter() const;

  double operator()(double x) const;
  const Pieces& pieces() const noexcept;
  /// True when the two half-line polynomials differ (x = 0 is a breakpoint).
  bool piecewise() const noexcept { return pieces().split(); }
  /// Number of nodes on the longest root-to-leaf path.
  int depth() const noexcept;

 private:
  struct Node;
  explicit ScalarFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Evaluates fn at x. Throws InputError for non-finite x.
double eval(const ScalarFn& fn, double x);

/// Antiderivative vanishing at 0. Supported: Poly, NegHalfFactor over a
/// supported base, SubtractConst over a supported base, SubtractLinear over a
/// Poly. Anything else throws InputError naming the variant.
ScalarFn primitive(const ScalarFn& fn);

/// Exact derivative; piecewise variants are differentiated on each half-line.
ScalarFn derivative(const ScalarFn& fn);

/// A Lienard system given either by (f, g) or by (F, g). F and G are the
/// primitives vanishing at 0; when only F is given, f is its piecewise
/// derivative.
class LienardSystem {
 public:
  static LienardSystem from_friction(ScalarFn f, ScalarFn g);
  static LienardSystem from_primitive(ScalarFn F, ScalarFn g);

  bool friction_given() const noexcept { return friction_given_; }
  const ScalarFn& f() const noexcept { return f_; }
  const ScalarFn& F() const noexcept { return F_; }
  const ScalarFn& g() const noexcept { return g_; }
  const ScalarFn& G() const noexcept { return G_; }

  /// True if any of F, g has a breakpoint at x = 0.
  bool piecewise() const noexcept { return F_.piecewise() || g_.piecewise(); }

 private:
  LienardSystem(bool friction_given, ScalarFn f, ScalarFn F, ScalarFn g, ScalarFn G);

  bool friction_given_ = true;
  ScalarFn f_, F_, g_, G_;
};

}  // namespace lienard::funcs
