#include "opsos/interval.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace opsos {

mpfr_prec_t Interval::precision() {
  static mpfr_prec_t prec = [] {
    const char* env = std::getenv("OP_SOS_PRECISION");
    long p = env ? std::strtol(env, nullptr, 10) : 128;
    if (p < 64) p = 64;
    if (p > 16384) p = 16384;
    return static_cast<mpfr_prec_t>(p);
  }();
  return prec;
}

Interval::Interval() {
  mpfr_init2(lo_, precision());
  mpfr_init2(hi_, precision());
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, precision());
  mpfr_init2(hi_, precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, precision());
  mpfr_init2(hi_, precision());
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact(long v) {
  Interval r;
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::exact(const Rational& q) {
  Interval r;
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Rational& lo, const Rational& hi) {
  Interval r;
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r;
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r;
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  // Min/max over the four endpoint products with directed rounding.
  Interval r;
  mpfr_t t, best_lo, best_hi;
  mpfr_init2(t, precision());
  mpfr_init2(best_lo, precision());
  mpfr_init2(best_hi, precision());
  bool first = true;
  const mpfr_t* xs[2] = {&lo_, &hi_};
  const mpfr_t* ys[2] = {&o.lo_, &o.hi_};
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
      first = false;
    }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (mpfr_sgn(o.lo_) <= 0)
    throw std::domain_error("Interval division requires a positive divisor");
  Interval r;
  mpfr_t a, b;
  mpfr_init2(a, precision());
  mpfr_init2(b, precision());
  // lo/hi candidates: for positive divisor, lo = min(lo/lo, lo/hi), etc.
  mpfr_div(a, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(b, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, a, b, MPFR_RNDD);
  mpfr_div(a, hi_, o.lo_, MPFR_RNDU);
  mpfr_div(b, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, a, b, MPFR_RNDU);
  mpfr_clear(a);
  mpfr_clear(b);
  return r;
}

Interval Interval::exp(const Interval& x) {
  Interval r;
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::ln(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0)
    throw std::domain_error("Interval::ln requires a positive argument");
  Interval r;
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0)
    throw std::domain_error("Interval::sqrt requires a nonnegative argument");
  Interval r;
  mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow_ui(unsigned long e) const {
  Interval r = Interval::exact(1);
  Interval base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Interval Interval::abs() const {
  Interval r;
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_neg(t, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, t, hi_, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

bool Interval::definitely_le(const Rational& q) const {
  return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0;
}
bool Interval::definitely_lt(const Rational& q) const {
  return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0;
}
bool Interval::definitely_ge(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0;
}
bool Interval::definitely_le(const Interval& o) const {
  return mpfr_cmp(hi_, o.lo_) <= 0;
}
bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

namespace {
std::string format_directed(const mpfr_t& v, int digits, mpfr_rnd_t rnd) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*R*e", digits, rnd, v);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}
}  // namespace

std::string Interval::lo_str(int digits) const {
  return format_directed(lo_, digits, MPFR_RNDD);
}
std::string Interval::hi_str(int digits) const {
  return format_directed(hi_, digits, MPFR_RNDU);
}

}  // namespace opsos
