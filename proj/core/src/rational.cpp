#include "opsos/rational.hpp"

namespace opsos {

Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  // num/den already coprime, so the power is canonical.
  return r;
}

Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational rational_from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), std::string(s).c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + std::string(s));
  if (sgn(q.get_den()) == 0)
    throw std::invalid_argument("zero denominator: " + std::string(s));
  q.canonicalize();
  return q;
}

std::pair<unsigned long, unsigned long> squarefree_split(unsigned long n) {
  if (n == 0) return {0, 1};
  unsigned long s = 1, r = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    unsigned long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (unsigned long i = 0; i + 1 < e; i += 2) s *= p;
    if (e % 2 == 1) r *= p;
  }
  r *= n;  // leftover prime
  return {s, r};
}

Surd make_surd(const Rational& q, unsigned long n) {
  if (sign(q) == 0 || n == 0) return Surd{Rational(0), 1};
  auto [s, r] = squarefree_split(n);
  return Surd{q * Rational(static_cast<long>(s)), r};
}

std::string Surd::str() const {
  if (is_zero()) return "0";
  if (radicand == 1) return to_string(coeff);
  return to_string(coeff) + "*sqrt(" + std::to_string(radicand) + ")";
}

}  // namespace opsos
