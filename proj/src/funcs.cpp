#include "lienard/funcs.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lienard/errors.hpp"

namespace lienard::funcs {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int degree, double c) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

double Polynomial::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::primitive() const {
  if (coeffs_.empty()) return {};
  std::vector<double> p(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) p[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(p));
}

Polynomial Polynomial::scaled_argument(double s) const {
  std::vector<double> q(coeffs_);
  double power = 1.0;
  for (double& c : q) {
    c *= power;
    power *= s;
  }
  return Polynomial(std::move(q));
}

int Polynomial::sign_at_pos_inf() const noexcept {
  if (is_zero()) return 0;
  return leading() > 0.0 ? 1 : -1;
}

int Polynomial::sign_at_neg_inf() const noexcept {
  if (is_zero()) return 0;
  const int s = leading() > 0.0 ? 1 : -1;
  return degree() % 2 == 0 ? s : -s;
}

double Polynomial::cauchy_bound() const {
  if (degree() < 1) return 0.0;
  double m = 0.0;
  for (int k = 0; k < degree(); ++k) m = std::max(m, std::abs(coeff(k) / leading()));
  return 1.0 + m;
}

bool Polynomial::is_odd() const noexcept {
  for (int k = 0; k <= degree(); k += 2)
    if (coeff(k) != 0.0) return false;
  return true;
}

bool Polynomial::is_even() const noexcept {
  for (int k = 1; k <= degree(); k += 2)
    if (coeff(k) != 0.0) return false;
  return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] += b.coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> r(p.coeffs_);
  for (double& c : r) c *= s;
  return Polynomial(std::move(r));
}

// ---------------------------------------------------------------------------
// ScalarFn

std::string to_string(FnKind kind) {
  switch (kind) {
    case FnKind::Poly: return "poly";
    case FnKind::NegHalfFactor: return "neg_factor";
    case FnKind::NegHalfArgScale: return "neg_argscale";
    case FnKind::SubtractConst: return "sub_const";
    case FnKind::SubtractLinear: return "sub_linear";
  }
  return "unknown";
}

struct ScalarFn::Node {
  FnKind kind = FnKind::Poly;
  Polynomial poly;
  std::optional<ScalarFn> base;
  double parameter = 0.0;
  Pieces pieces;
  int depth = 1;
};

namespace {

void require_positive_lambda(double lambda, FnKind kind) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InputError(to_string(kind) + ": lambda must be a positive finite number");
}

void require_finite(double c, FnKind kind) {
  if (!std::isfinite(c)) throw InputError(to_string(kind) + ": parameter must be finite");
}

}  // namespace

ScalarFn::ScalarFn() : ScalarFn(poly(Polynomial{})) {}

ScalarFn ScalarFn::poly(Polynomial p) {
  for (double c : p.coeffs())
    if (!std::isfinite(c)) throw InputError("poly: coefficients must be finite");
  auto node = std::make_shared<Node>();
  node->kind = FnKind::Poly;
  node->pieces = Pieces{p, p};
  node->poly = std::move(p);
  return ScalarFn(std::move(node));
}

ScalarFn ScalarFn::neg_half_factor(ScalarFn base, double lambda) {
  require_positive_lambda(lambda, FnKind::NegHalfFactor);
  auto node = std::make_shared<Node>();
  node->kind = FnKind::NegHalfFactor;
  node->parameter = lambda;
  node->pieces = Pieces{lambda * base.pieces().negative, base.pieces().nonnegative};
  node->depth = base.depth() + 1;
  node->base = std::move(base);
  return ScalarFn(std::move(node));
}

ScalarFn ScalarFn::neg_half_arg_scale(ScalarFn base, double lambda) {
  require_positive_lambda(lambda, FnKind::NegHalfArgScale);
  auto node = std::make_shared<Node>();
  node->kind = FnKind::NegHalfArgScale;
  node->parameter = lambda;
  node->pieces = Pieces{base.pieces().negative.scaled_argument(lambda), base.pieces().nonnegative};
  node->depth = base.depth() + 1;
  node->base = std::move(base);
  return ScalarFn(std::move(node));
}

ScalarFn ScalarFn::subtract_const(ScalarFn base, double c) {
  require_finite(c, FnKind::SubtractConst);
  auto node = std::make_shared<Node>();
  node->kind = FnKind::SubtractConst;
  node->parameter = c;
  const Polynomial shift = Polynomial::constant(c);
  node->pieces = Pieces{base.pieces().negative - shift, base.pieces().nonnegative - shift};
  node->depth = base.depth() + 1;
  node->base = std::move(base);
  return ScalarFn(std::move(node));
}

ScalarFn ScalarFn::subtract_linear(ScalarFn base, double c) {
  require_finite(c, FnKind::SubtractLinear);
  auto node = std::make_shared<Node>();
  node->kind = FnKind::SubtractLinear;
  node->parameter = c;
  const Polynomial line = Polynomial::monomial(1, c);
  node->pieces = Pieces{base.pieces().negative - line, base.pieces().nonnegative - line};
  node->depth = base.depth() + 1;
  node->base = std::move(base);
  return ScalarFn(std::move(node));
}

FnKind ScalarFn::kind() const noexcept { return node_->kind; }

const Polynomial& ScalarFn::polynomial() const {
  if (node_->kind != FnKind::Poly) throw InputError("polynomial() called on " + to_string(node_->kind));
  return node_->poly;
}

const ScalarFn& ScalarFn::base() const {
  if (!node_->base) throw InputError("base() called on poly");
  return *node_->base;
}

double ScalarFn::parameter() const { return node_->parameter; }

const Pieces& ScalarFn::pieces() const noexcept { return node_->pieces; }

int ScalarFn::depth() const noexcept { return node_->depth; }

double ScalarFn::operator()(double x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case FnKind::Poly: return n.poly(x);
    case FnKind::NegHalfFactor: {
      const double v = (*n.base)(x);
      return x < 0.0 ? n.parameter * v : v;
    }
    case FnKind::NegHalfArgScale: return (*n.base)(x < 0.0 ? n.parameter * x : x);
    case FnKind::SubtractConst: return (*n.base)(x) - n.parameter;
    case FnKind::SubtractLinear: return (*n.base)(x) - n.parameter * x;
  }
  return 0.0;
}

double eval(const ScalarFn& fn, double x) {
  if (!std::isfinite(x)) throw InputError("eval: argument must be finite");
  return fn(x);
}

ScalarFn primitive(const ScalarFn& fn) {
  switch (fn.kind()) {
    case FnKind::Poly: return ScalarFn::poly(fn.polynomial().primitive());
    case FnKind::NegHalfFactor:
      // The primitive of the base vanishes at 0, so scaling its left half is
      // the primitive of the scaled function.
      return ScalarFn::neg_half_factor(primitive(fn.base()), fn.parameter());
    case FnKind::SubtractConst: return ScalarFn::subtract_linear(primitive(fn.base()), fn.parameter());
    case FnKind::SubtractLinear:
      if (fn.base().kind() == FnKind::Poly)
        return ScalarFn::poly(fn.base().polynomial().primitive() -
                              Polynomial::monomial(2, 0.5 * fn.parameter()));
      throw InputError("primitive: sub_linear is only integrable over a poly base, got " +
                       to_string(fn.base().kind()));
    case FnKind::NegHalfArgScale: break;
  }
  throw InputError("primitive: unsupported variant " + to_string(fn.kind()));
}

ScalarFn derivative(const ScalarFn& fn) {
  switch (fn.kind()) {
    case FnKind::Poly: return ScalarFn::poly(fn.polynomial().derivative());
    case FnKind::NegHalfFactor: return ScalarFn::neg_half_factor(derivative(fn.base()), fn.parameter());
    case FnKind::NegHalfArgScale: {
      // d/dx h(lambda x) = lambda h'(lambda x) on x < 0.
      const double lambda = fn.parameter();
      return ScalarFn::neg_half_factor(ScalarFn::neg_half_arg_scale(derivative(fn.base()), lambda),
                                       lambda);
    }
    case FnKind::SubtractConst: return derivative(fn.base());
    case FnKind::SubtractLinear: return ScalarFn::subtract_const(derivative(fn.base()), fn.parameter());
  }
  throw InputError("derivative: unsupported variant " + to_string(fn.kind()));
}

// ---------------------------------------------------------------------------
// LienardSystem

namespace {

constexpr double kOriginTol = 1e-12;

void require_vanishes_at_origin(const ScalarFn& fn, const char* name) {
  if (std::abs(fn(0.0)) > kOriginTol)
    throw InputError(std::string(name) + "(0) must vanish, got " + std::to_string(fn(0.0)));
}

}  // namespace

LienardSystem::LienardSystem(bool friction_given, ScalarFn f, ScalarFn F, ScalarFn g, ScalarFn G)
    : friction_given_(friction_given),
      f_(std::move(f)),
      F_(std::move(F)),
      g_(std::move(g)),
      G_(std::move(G)) {
  require_vanishes_at_origin(F_, "F");
  require_vanishes_at_origin(G_, "G");
}

LienardSystem LienardSystem::from_friction(ScalarFn f, ScalarFn g) {
  ScalarFn F = primitive(f);
  ScalarFn G = primitive(g);
  return LienardSystem(true, std::move(f), std::move(F), std::move(g), std::move(G));
}

LienardSystem LienardSystem::from_primitive(ScalarFn F, ScalarFn g) {
  ScalarFn f = derivative(F);
  ScalarFn G = primitive(g);
  return LienardSystem(false, std::move(f), std::move(F), std::move(g), std::move(G));
}

}  // namespace lienard::funcs
