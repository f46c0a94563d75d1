#include "opsos/combinatorics.hpp"

#include <mutex>
#include <shared_mutex>

namespace opsos {

Integer binomial_z(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
  if (k < 0 || k > n) return Integer(0);
  if (k > n - k) k = n - k;
  Integer r(1);
  for (long i = 0; i < k; ++i) {
    r *= Integer(n - i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i + 1));
  }
  return r;
}

Rational binomial(long n, long k) { return Rational(binomial_z(n, k)); }

namespace {
std::vector<Integer> g_factorials{Integer(1)};  // 0! = 1
std::shared_mutex g_factorial_mu;
}  // namespace

Integer factorial(unsigned long n) {
  {
    std::shared_lock lk(g_factorial_mu);
    if (n < g_factorials.size()) return g_factorials[n];
  }
  std::unique_lock lk(g_factorial_mu);
  while (g_factorials.size() <= n)
    g_factorials.push_back(g_factorials.back() *
                           Integer(static_cast<unsigned long>(g_factorials.size())));
  return g_factorials[n];
}

Integer falling_z(const Integer& x, unsigned long j) {
  Integer r(1);
  for (unsigned long a = 0; a < j; ++a) r *= x - Integer(a);
  return r;
}

Rational falling(const Rational& x, unsigned long j) {
  Rational r(1);
  for (unsigned long a = 0; a < j; ++a) r *= x - Rational(static_cast<long>(a));
  return r;
}

}  // namespace opsos
