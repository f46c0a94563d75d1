#ifndef OPSOS_INTERVAL_HPP
#define OPSOS_INTERVAL_HPP

#include <mpfr.h>

#include <string>

#include "opsos/rational.hpp"

namespace opsos {

// Outward-rounded enclosure [lo, hi] of a real number. All arithmetic and the
// transcendental functions round lo down and hi up, so every result encloses
// the exact value. Working precision comes from OP_SOS_PRECISION (bits,
// default 128), read once per process.
class Interval {
 public:
  Interval();                       // [0, 0]
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(Interval o);
  ~Interval();

  static mpfr_prec_t precision();

  static Interval exact(long v);
  static Interval exact(const Rational& q);  // outward if q is not representable
  static Interval hull(const Rational& lo, const Rational& hi);

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  // Requires the divisor interval to be strictly positive.
  Interval operator/(const Interval& o) const;
  Interval operator-() const;

  Interval& operator+=(const Interval& o) { return *this = *this + o; }

  static Interval exp(const Interval& x);
  // Requires a strictly positive argument interval.
  static Interval ln(const Interval& x);
  static Interval sqrt(const Interval& x);
  Interval pow_ui(unsigned long e) const;
  Interval abs() const;

  // Enclosure queries. The "definitely" forms are outward-safe: a true result
  // proves the corresponding statement about the enclosed value.
  bool definitely_le(const Rational& q) const;   // hi <= q
  bool definitely_lt(const Rational& q) const;   // hi <  q
  bool definitely_ge(const Rational& q) const;   // lo >= q
  bool definitely_le(const Interval& o) const;   // hi <= o.lo
  bool contains_zero() const;

  double lo_d() const;
  double hi_d() const;
  std::string lo_str(int digits = 20) const;  // rounded toward -inf
  std::string hi_str(int digits = 20) const;  // rounded toward +inf

  // Upper bound on |x| as an interval upper endpoint comparison helper.
  Interval magnitude() const { return abs(); }

  const mpfr_t& lo_raw() const { return lo_; }
  const mpfr_t& hi_raw() const { return hi_; }

 private:
  mpfr_t lo_, hi_;
};

}  // namespace opsos

#endif
