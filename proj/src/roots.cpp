#include "lienard/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/errors.hpp"

namespace lienard::roots {

namespace {

int sgn(const mpq_class& q) { return mpq_sgn(q.get_mpq_t()); }

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

void trim(std::vector<mpq_class>& c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

// Floating-point Horner with a running bound on the rounding error. Returns the
// certified sign, or 2 when the bound does not separate the value from zero.
int fast_sign(const std::vector<double>& c, double x) {
  double v = 0.0;
  double s = 0.0;
  const double ax = std::abs(x);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    v = v * x + *it;
    s = s * ax + std::abs(*it);
  }
  constexpr double u = std::numeric_limits<double>::epsilon();
  const double err = s * u * (4.0 * static_cast<double>(c.size()) + 4.0);
  if (!std::isfinite(v) || !std::isfinite(err)) return 2;
  if (std::abs(v) > err && std::abs(v) > std::numeric_limits<double>::min() * 16) return sgn(v);
  return 2;
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
  for (auto& c : coeffs_) c.canonicalize();
  cache_approx();
}

RationalPolynomial::RationalPolynomial(const funcs::Polynomial& p) {
  coeffs_.reserve(p.coeffs().size());
  for (double c : p.coeffs()) coeffs_.emplace_back(c);
  trim(coeffs_);
  cache_approx();
}

void RationalPolynomial::cache_approx() {
  approx_.clear();
  approx_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) approx_.push_back(c.get_d());
}

mpq_class RationalPolynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int RationalPolynomial::sign_at(double x) const {
  if (coeffs_.empty()) return 0;
  const int fast = fast_sign(approx_, x);
  if (fast != 2) return fast;
  return sgn((*this)(mpq_class(x)));
}

int RationalPolynomial::sign_at_pos_inf() const { return coeffs_.empty() ? 0 : sgn(leading()); }

int RationalPolynomial::sign_at_neg_inf() const {
  if (coeffs_.empty()) return 0;
  const int s = sgn(leading());
  return degree() % 2 == 0 ? s : -s;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::operator-() const {
  std::vector<mpq_class> r(coeffs_);
  for (auto& c : r) c = -c;
  return RationalPolynomial(std::move(r));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(
    const RationalPolynomial& divisor) const {
  if (divisor.is_zero()) throw InputError("polynomial division by zero");
  std::vector<mpq_class> rem(coeffs_);
  const int dd = divisor.degree();
  if (degree() < dd) return {RationalPolynomial{}, *this};
  std::vector<mpq_class> quot(static_cast<std::size_t>(degree() - dd + 1));
  for (int k = degree() - dd; k >= 0; --k) {
    const mpq_class q = rem[static_cast<std::size_t>(k + dd)] / divisor.leading();
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

funcs::Polynomial RationalPolynomial::to_double() const {
  std::vector<double> c;
  c.reserve(coeffs_.size());
  for (const auto& q : coeffs_) c.push_back(q.get_d());
  return funcs::Polynomial(std::move(c));
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  std::vector<mpq_class> c(a.coeffs());
  const mpq_class lead = c.back();
  for (auto& v : c) v /= lead;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() < 1) return p;
  const RationalPolynomial d = gcd(p, p.derivative());
  if (d.degree() < 1) return p;
  return p.divmod(d).first;
}

// ---------------------------------------------------------------------------
// Sturm sequences

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

std::vector<funcs::Polynomial> SturmSequence::polys() const {
  std::vector<funcs::Polynomial> out;
  out.reserve(chain.size());
  for (const auto& p : chain) out.push_back(p.to_double());
  return out;
}

int SturmSequence::variations_at(double x) const {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& p : chain) s.push_back(p.sign_at(x));
  return variations(s);
}

int SturmSequence::variations_at_pos_inf() const {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(p.sign_at_pos_inf());
  return variations(s);
}

int SturmSequence::variations_at_neg_inf() const {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(p.sign_at_neg_inf());
  return variations(s);
}

SturmSequence sturm_sequence(const RationalPolynomial& p) {
  if (p.is_zero()) throw InputError("sturm_sequence: zero polynomial");
  SturmSequence s;
  s.chain.push_back(squarefree_part(p));
  if (s.chain.front().degree() < 1) return s;
  s.chain.push_back(s.chain.front().derivative());
  while (s.chain.back().degree() > 0) {
    const auto& a = s.chain[s.chain.size() - 2];
    const auto& b = s.chain.back();
    RationalPolynomial r = -a.divmod(b).second;
    if (r.is_zero()) break;  // cannot happen for a squarefree p0
    s.chain.push_back(std::move(r));
  }
  return s;
}

SturmSequence sturm_sequence(const funcs::Polynomial& p) { return sturm_sequence(RationalPolynomial(p)); }

int count_roots(const SturmSequence& s, double a, double b) {
  if (!(a < b)) throw InputError("count_roots: need a < b");
  for (int tries = 0; s.chain.front().sign_at(a) == 0; ++tries) {
    if (tries == 4) throw NumericalError("count_roots: left endpoint remains a root after nudging");
    a = std::nextafter(a, std::numeric_limits<double>::infinity());
  }
  return s.variations_at(a) - s.variations_at(b);
}

int count_roots_above(const SturmSequence& s, double a) {
  for (int tries = 0; s.chain.front().sign_at(a) == 0; ++tries) {
    if (tries == 4) throw NumericalError("count_roots_above: endpoint remains a root after nudging");
    a = std::nextafter(a, std::numeric_limits<double>::infinity());
  }
  return s.variations_at(a) - s.variations_at_pos_inf();
}

int count_roots_below(const SturmSequence& s, double b) {
  return s.variations_at_neg_inf() - s.variations_at(b);
}

int count_real_roots(const SturmSequence& s) {
  return s.variations_at_neg_inf() - s.variations_at_pos_inf();
}

// ---------------------------------------------------------------------------
// Isolation

double default_search_radius(const funcs::Polynomial& p) {
  return 1.0 + std::max(1.0, p.cauchy_bound());
}

double default_search_radius(const funcs::ScalarFn& fn) {
  return std::max(default_search_radius(fn.pieces().negative),
                  default_search_radius(fn.pieces().nonnegative));
}

namespace {

// Raw isolation of the distinct zeros of one polynomial on [lo, hi].
class PolyIsolator {
 public:
  PolyIsolator(const RationalPolynomial& p, double width)
      : chain_(sturm_sequence(p)), sq_(chain_.chain.front()), width_(width) {}

  std::vector<std::pair<double, double>> run(double lo, double hi) {
    out_.clear();
    if (sq_.degree() < 1) return out_;
    double a = lo;
    double b = hi;
    if (sq_.sign_at(a) == 0) {
      const double d = point_delta(a, 0.5 * (b - a));
      out_.emplace_back(a - d, a + d);
      a += d;
    }
    if (b > a && sq_.sign_at(b) == 0) {
      const double d = point_delta(b, 0.5 * (b - a));
      out_.emplace_back(b - d, b + d);
      b -= d;
    }
    if (b > a) recurse(a, b, 0);
    std::sort(out_.begin(), out_.end());
    return out_;
  }

  int count(double a, double b) const { return chain_.variations_at(a) - chain_.variations_at(b); }
  const RationalPolynomial& squarefree() const { return sq_; }

 private:
  // Half-width of an isolating interval around an exact root r.
  double point_delta(double r, double max_delta) const {
    double d = std::min(0.5 * width_, max_delta);
    for (int i = 0; i < 2000; ++i) {
      if (r - d == r || r + d == r) break;
      if (sq_.sign_at(r - d) != 0 && sq_.sign_at(r + d) != 0 && count(r - d, r + d) == 1) return d;
      d *= 0.5;
    }
    throw NumericalError("isolate_roots: could not isolate a root at a sample point");
  }

  void recurse(double lo, double hi, int depth) {
    if (depth > 2000) throw NumericalError("isolate_roots: bisection depth exceeded");
    const int n = count(lo, hi);
    if (n == 0) return;
    if (n == 1) {
      refine(lo, hi);
      return;
    }
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) throw NumericalError("isolate_roots: roots closer than machine spacing");
    if (sq_.sign_at(mid) == 0) {
      const double d = point_delta(mid, 0.5 * std::min(mid - lo, hi - mid));
      out_.emplace_back(mid - d, mid + d);
      recurse(lo, mid - d, depth + 1);
      recurse(mid + d, hi, depth + 1);
      return;
    }
    recurse(lo, mid, depth + 1);
    recurse(mid, hi, depth + 1);
  }

  // Exactly one simple root of sq_ in (lo, hi): the signs at lo and hi differ.
  void refine(double lo, double hi) {
    const int s_lo = sq_.sign_at(lo);
    while (hi - lo > width_) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const int s = sq_.sign_at(mid);
      if (s == 0) {
        const double d = point_delta(mid, 0.5 * std::min(mid - lo, hi - mid));
        out_.emplace_back(mid - d, mid + d);
        return;
      }
      (s == s_lo ? lo : hi) = mid;
    }
    out_.emplace_back(lo, hi);
  }

  SturmSequence chain_;
  RationalPolynomial sq_;
  double width_;
  std::vector<std::pair<double, double>> out_;
};

double max_abs_derivative(const funcs::Pieces& pieces, double lo, double hi) {
  const funcs::Polynomial dn = pieces.negative.derivative();
  const funcs::Polynomial dp = pieces.nonnegative.derivative();
  double m = 0.0;
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = lo + (hi - lo) * i / kSamples;
    m = std::max(m, std::abs(x < 0.0 ? dn(x) : dp(x)));
  }
  if (lo <= 0.0 && 0.0 <= hi) m = std::max({m, std::abs(dn(0.0)), std::abs(dp(0.0))});
  return m;
}

void require_range(double lo, double hi, double width) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
    throw InputError("isolate_roots: range must be finite and ordered");
  if (!(width > 0.0)) throw InputError("isolate_roots: width must be positive");
}

}  // namespace

std::vector<RootInterval> isolate_roots(const funcs::Polynomial& p, double lo, double hi, double width) {
  return isolate_roots(funcs::ScalarFn::poly(p), lo, hi, width);
}

std::vector<RootInterval> isolate_roots(const funcs::ScalarFn& fn, double lo, double hi, double width) {
  require_range(lo, hi, width);
  const funcs::Pieces& pieces = fn.pieces();
  const RationalPolynomial neg(pieces.negative);
  const RationalPolynomial pos(pieces.nonnegative);
  if (pos.is_zero() && neg.is_zero()) throw InputError("isolate_roots: function is identically zero");

  std::vector<std::pair<double, double>> raw;
  if (!fn.piecewise()) {
    raw = PolyIsolator(pos, width).run(lo, hi);
  } else {
    if (lo < 0.0 && !neg.is_zero()) {
      PolyIsolator left(neg, width);
      for (auto iv : left.run(lo, std::min(hi, 0.0))) {
        // A zero at the breakpoint is owned by the right piece.
        if (iv.first <= 0.0 && 0.0 <= iv.second && neg.sign_at(0.0) == 0) continue;
        raw.push_back(iv);
      }
    }
    if (hi >= 0.0 && !pos.is_zero()) {
      PolyIsolator right(pos, width);
      const bool zero_root = pos.sign_at(0.0) == 0;
      for (auto iv : right.run(std::max(lo, 0.0), hi)) {
        if (zero_root && iv.first <= 0.0 && 0.0 <= iv.second) {
          // Keep the left half of the interval free of left-piece zeros.
          if (!neg.is_zero()) {
            const SturmSequence left_chain = sturm_sequence(neg);
            double d = -iv.first;
            for (int i = 0; i < 2000 && d > 0.0; ++i) {
              int n = left_chain.variations_at(-d) - left_chain.variations_at(0.0);
              if (neg.sign_at(0.0) == 0) --n;
              if (n == 0 && neg.sign_at(-d) != 0) break;
              d *= 0.5;
            }
            iv.first = -d;
          }
        }
        raw.push_back(iv);
      }
    }
    std::sort(raw.begin(), raw.end());
  }

  // Slopes are compared with the derivative size where the zeros live, not
  // over the whole search range, where high-degree terms dominate.
  const double origin = std::clamp(0.0, lo, hi);
  const double span_lo = raw.empty() ? lo : std::min(raw.front().first, origin);
  const double span_hi = raw.empty() ? hi : std::max(raw.back().second, origin);
  const double deriv_scale = 1.0 + max_abs_derivative(pieces, span_lo, span_hi);
  const funcs::Polynomial dn = pieces.negative.derivative();
  const funcs::Polynomial dp = pieces.nonnegative.derivative();
  auto sign_of = [&](double x) { return x < 0.0 ? neg.sign_at(x) : pos.sign_at(x); };

  std::vector<RootInterval> out;
  out.reserve(raw.size());
  for (const auto& [a, b] : raw) {
    RootInterval r;
    r.lo = a;
    r.hi = b;
    r.sign_before = sign_of(a);
    r.sign_after = sign_of(b);
    const double mid = r.midpoint();
    double slope = std::abs(mid < 0.0 ? dn(mid) : dp(mid));
    if (fn.piecewise() && a < 0.0 && 0.0 < b)
      slope = std::min(std::abs(dn(0.0)), std::abs(dp(0.0)));
    r.transversal = r.sign_before * r.sign_after < 0 && slope > kTransversalityTol * deriv_scale;
    out.push_back(r);
  }
  return out;
}

std::vector<RootInterval> isolate_roots(const funcs::ScalarFn& fn, double width) {
  const double r = default_search_radius(fn);
  return isolate_roots(fn, -r, r, width);
}

RootInterval refine_root(const funcs::ScalarFn& fn, const RootInterval& root, double width) {
  if (root.width() <= width) return root;
  auto found = isolate_roots(fn, root.lo, root.hi, width);
  if (found.size() != 1) throw NumericalError("refine_root: interval does not isolate exactly one root");
  RootInterval r = found.front();
  r.transversal = root.transversal;
  return r;
}

}  // namespace lienard::roots
