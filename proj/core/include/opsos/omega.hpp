#ifndef OPSOS_OMEGA_HPP
#define OPSOS_OMEGA_HPP

#include <optional>
#include <vector>

#include "opsos/ratpoly.hpp"
#include "opsos/sym_matrix.hpp"

namespace opsos {

// Distribution of the count below the lowest of d distinguished elements:
// support [0, n-d], pmf(k) = C(n-k-1, d-1) / C(n, d).
struct OmegaDist {
  long n;
  int d;

  OmegaDist(long n_, int d_);
  Rational pmf(long k) const;            // 0 outside the support
  Rational moment(unsigned long p) const;  // E[u^p], exact direct summation
};

// Exact raw moments E[u^p] for p = 0..p_max in one pass over the support.
std::vector<Rational> omega_raw_moments(long n, int d, int p_max);

// Matrix A with A(a,b) = E_{Omega(n,d2)}[(u - 1) u^{a+b}], 0 <= a,b <= d.
SymMatrix omega_signed_form(long n, int d2, int d);

// Smallest d <= d_max with omega_signed_form(n, d2, d) not PSD; absent if the
// form stays PSD throughout. Linear ascent with exact verdicts.
std::optional<int> omega_first_failure(long n, int d2, int d_max);

// E[ u_1^{e_1} ... u_{d2}^{e_{d2}} ] over uniform ordered placements of
// n' labeled balls and d2-1 dividing lines, by direct enumeration.
Rational balls_in_bins_bruteforce(int d2, int n_prime, const std::vector<int>& exponents);

// Same, for many monomials in one pass over the placements.
std::vector<Rational> balls_in_bins_bruteforce_batch(
    int d2, int n_prime, const std::vector<std::vector<int>>& exponent_list);

// The same expectation as a polynomial in n', obtained by exact interpolation
// at n' = 0..deg from brute-force values. Total degree <= 4, d2 <= 4.
RatPoly balls_in_bins_poly(int d2, const std::vector<int>& exponents);

}  // namespace opsos

#endif
