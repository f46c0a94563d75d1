#ifndef OPSOS_RATIONAL_HPP
#define OPSOS_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace opsos {

// Exact arbitrary-precision integers and rationals. mpq_class keeps the
// canonical reduced form (gcd 1, positive denominator) for us; every helper
// below preserves it.
using Integer = mpz_class;
using Rational = mpq_class;

// Raised when an operation would exceed a documented size budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

Rational pow(const Rational& base, unsigned long e);
Integer pow(const Integer& base, unsigned long e);

// "p/q" with "/1" omitted, e.g. "1/2", "-3", "0".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts the formats produced by to_string (and "p/1").
Rational rational_from_string(std::string_view s);

// c * sqrt(radicand) with radicand a positive square-free integer; the exact
// representation used for h-basis coefficients.
struct Surd {
  Rational coeff{0};
  unsigned long radicand = 1;

  Rational square() const {
    return coeff * coeff * Rational(static_cast<long>(radicand));
  }
  bool is_zero() const { return sign(coeff) == 0; }
  std::string str() const;
};

// Splits n = s^2 * r with r square-free; returns {s, r}.
std::pair<unsigned long, unsigned long> squarefree_split(unsigned long n);

// q * sqrt(n) reduced so the radicand is square-free.
Surd make_surd(const Rational& q, unsigned long n);

}  // namespace opsos

#endif
