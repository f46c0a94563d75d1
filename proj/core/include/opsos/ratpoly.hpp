#ifndef OPSOS_RATPOLY_HPP
#define OPSOS_RATPOLY_HPP

#include <optional>
#include <vector>

#include "opsos/rational.hpp"

namespace opsos {

// Dense univariate polynomial with exact rational coefficients, lowest degree
// first. Trailing zeros are trimmed; the zero polynomial has no coefficients
// and degree -1.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const Rational& a) { return RatPoly({a}); }
  static RatPoly x() { return RatPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rational& s) const;
  RatPoly operator-() const { return *this * Rational(-1); }
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  RatPoly derivative() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// q(x) = p(a x + b), exactly; degree preserved. Rejects a = 0.
RatPoly affine_substitute(const RatPoly& p, const Rational& a, const Rational& b);

// Quotient and remainder of exact division: A = Q*B + R, deg R < deg B.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);

// Monic gcd (constant 1 for coprime inputs; zero polynomial only if both zero).
RatPoly poly_gcd(RatPoly a, RatPoly b);

// p / gcd(p, p'): same roots, all simple.
RatPoly squarefree_part(const RatPoly& p);

// All real roots lie in (-B, B).
Rational cauchy_root_bound(const RatPoly& p);

// Isolating intervals (lo, hi] for the real roots of a square-free polynomial
// inside (a, b), each containing exactly one root, returned in increasing
// order. Exact rational roots may be reported as degenerate [r, r].
struct RootBracket {
  Rational lo, hi;
  bool exact = false;  // lo == hi == root
};
std::vector<RootBracket> isolate_roots(const RatPoly& p, const Rational& a,
                                       const Rational& b);

// Shrinks a bracket around a simple root until hi - lo <= width.
RootBracket refine_bracket(const RatPoly& p, RootBracket br, const Rational& width);

}  // namespace opsos

#endif
