#include "opsos/omega.hpp"

#include <algorithm>
#include <numeric>

#include "opsos/combinatorics.hpp"

namespace opsos {

OmegaDist::OmegaDist(long n_, int d_) : n(n_), d(d_) {
  if (d < 1 || d > n) throw std::invalid_argument("OmegaDist requires 1 <= d <= n");
}

Rational OmegaDist::pmf(long k) const {
  if (k < 0 || k > n - d) return Rational(0);
  return Rational(binomial_z(n - k - 1, d - 1)) / Rational(binomial_z(n, d));
}

Rational OmegaDist::moment(unsigned long p) const {
  return omega_raw_moments(n, d, static_cast<int>(p))[p];
}

std::vector<Rational> omega_raw_moments(long n, int d, int p_max) {
  OmegaDist dist(n, d);
  std::vector<Integer> sums(p_max + 1, Integer(0));
  // weight(k) = C(n-k-1, d-1), updated incrementally; the pmf denominator
  // C(n, d) is applied once at the end.
  Integer w = binomial_z(n - 1, d - 1);
  for (long k = 0; k <= n - d; ++k) {
    Integer kp(1);
    for (int p = 0; p <= p_max; ++p) {
      sums[p] += w * kp;
      kp *= Integer(k);
    }
    // C(n-k-2, d-1) = C(n-k-1, d-1) * (n-k-d) / (n-k-1)
    if (k < n - d) {
      w *= Integer(n - k - d);
      mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), Integer(n - k - 1).get_mpz_t());
    }
  }
  Integer denom = binomial_z(n, d);
  std::vector<Rational> out(p_max + 1);
  for (int p = 0; p <= p_max; ++p) {
    out[p] = Rational(sums[p]) / Rational(denom);
  }
  return out;
}

SymMatrix omega_signed_form(long n, int d2, int d) {
  if (d < 0) throw std::invalid_argument("omega_signed_form: d must be >= 0");
  std::vector<Rational> mom = omega_raw_moments(n, d2, 2 * d + 1);
  SymMatrix a(d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = i; j <= d; ++j) a.set(i, j, mom[i + j + 1] - mom[i + j]);
  for (int i = 0; i <= d; ++i)
    a.basis_labels.push_back(i == 0 ? "1" : "u^" + std::to_string(i));
  return a;
}

std::optional<int> omega_first_failure(long n, int d2, int d_max) {
  for (int d = 0; d <= d_max; ++d)
    if (!ldl_status(omega_signed_form(n, d2, d)).psd) return d;
  return std::nullopt;
}

std::vector<Rational> balls_in_bins_bruteforce_batch(
    int d2, int n_prime, const std::vector<std::vector<int>>& exponent_list) {
  if (d2 < 1) throw std::invalid_argument("balls_in_bins: d2 must be >= 1");
  if (n_prime < 0 || n_prime > 12 || d2 > 6)
    throw budget_error("balls_in_bins brute force: n' <= 12 and d2 <= 6");
  for (const auto& e : exponent_list) {
    if (static_cast<int>(e.size()) > d2)
      throw std::invalid_argument("balls_in_bins: more exponents than bins");
    int deg = std::accumulate(e.begin(), e.end(), 0);
    if (deg > 6) throw budget_error("balls_in_bins brute force: degree <= 6");
  }
  // Sequence of n' distinct balls (1..n') and d2-1 identical dividers (0);
  // iterating next_permutation over the sorted multiset enumerates each
  // distinct placement exactly once. Per-placement products fit in 64 bits
  // at these budgets (u_j <= 12, degree <= 6).
  std::vector<int> seq;
  for (int i = 0; i < d2 - 1; ++i) seq.push_back(0);
  for (int b = 1; b <= n_prime; ++b) seq.push_back(b);
  std::sort(seq.begin(), seq.end());

  std::vector<Integer> totals(exponent_list.size(), Integer(0));
  std::vector<unsigned long long> acc(exponent_list.size(), 0);
  Integer count(0);
  std::vector<long> u(d2);
  const unsigned long long flush_at = 1ULL << 56;
  do {
    std::fill(u.begin(), u.end(), 0);
    int bin = 0;
    for (int v : seq) {
      if (v == 0)
        ++bin;
      else
        ++u[bin];
    }
    for (size_t m = 0; m < exponent_list.size(); ++m) {
      unsigned long long prod = 1;
      const auto& e = exponent_list[m];
      for (size_t i = 0; i < e.size(); ++i)
        for (int x = 0; x < e[i]; ++x) prod *= static_cast<unsigned long long>(u[i]);
      acc[m] += prod;
      if (acc[m] > flush_at) {
        totals[m] += Integer(acc[m]);
        acc[m] = 0;
      }
    }
    count += 1;
  } while (std::next_permutation(seq.begin(), seq.end()));
  std::vector<Rational> out(exponent_list.size());
  for (size_t m = 0; m < exponent_list.size(); ++m) {
    totals[m] += Integer(acc[m]);
    out[m] = Rational(totals[m]) / Rational(count);
  }
  return out;
}

Rational balls_in_bins_bruteforce(int d2, int n_prime, const std::vector<int>& exponents) {
  return balls_in_bins_bruteforce_batch(d2, n_prime, {exponents})[0];
}

RatPoly balls_in_bins_poly(int d2, const std::vector<int>& exponents) {
  int deg = std::accumulate(exponents.begin(), exponents.end(), 0);
  if (deg > 4 || d2 > 4) throw budget_error("balls_in_bins_poly: degree <= 4 and d2 <= 4");
  // Newton interpolation at n' = 0..deg; the expectation is a polynomial of
  // degree <= deg in n', so these nodes determine it.
  std::vector<Rational> xs, ys;
  for (int np = 0; np <= deg; ++np) {
    xs.push_back(Rational(np));
    ys.push_back(balls_in_bins_bruteforce(d2, np, exponents));
  }
  std::vector<Rational> coef = ys;  // divided differences
  for (size_t j = 1; j < coef.size(); ++j)
    for (size_t i = coef.size() - 1; i >= j; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  RatPoly p = RatPoly::constant(coef.back());
  for (int i = static_cast<int>(coef.size()) - 2; i >= 0; --i) {
    RatPoly shift({-xs[i], Rational(1)});
    p = p * shift + RatPoly::constant(coef[i]);
  }
  return p;
}

}  // namespace opsos
