#ifndef OPSOS_QUADRATURE_HPP
#define OPSOS_QUADRATURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "opsos/interval.hpp"
#include "opsos/ratpoly.hpp"

namespace opsos {

// Endpoint-corrected rectangle scheme of order t: coefficients c solve
// M_t c = v_t with (v_t)_a = t^a/(a+1), so sum_b b^a c_{b+1} = t^a/(a+1)
// for a = 0..t.
struct QuadScheme {
  int t = 0;
  std::vector<Rational> c;
};

QuadScheme quad_coefficients(int t);  // 1 <= t <= 6

struct TraceFactor {
  std::string name;
  std::string value;  // exact rational as "p/q"
  std::string role;
};

// Constants for the discrete-vs-integral error bound
//   |Delta sum - integral| <= (C1 (d Delta)^2 e^{2 t d Delta}
//                              + C2 d (d Delta)^{t+1}) * integral,
// valid for every polynomial degree d >= 1. Assembled exactly from the
// correction weights with every factor recorded.
struct ErrorBoundConstants {
  int t = 0;
  Rational c1, c2;
  std::vector<TraceFactor> trace;

  std::string trace_json() const;
};

ErrorBoundConstants error_bound_constants(int t);

// Upper enclosure of the normalized bound C1 (dD)^2 e^{2tdD} + C2 d (dD)^{t+1}.
Interval integration_error_bound(int t, int d, const Rational& delta);

// Truncation point for the discrete weighted sums: at least
// (50 + 4 d ln(max(d,2))) / Delta and (2d+2)/Delta.
long default_k_max(int d, const Rational& delta);

struct DiscreteSum {
  Interval value;  // Delta * sum_{k <= k_max} (k Delta) e^{-k Delta} g(k Delta)^2
  Interval tail;   // rigorous upper bound on the omitted k > k_max mass
};

DiscreteSum weighted_discrete_sum(const RatPoly& g, const Rational& delta, long k_max);

// Partial sum Delta * sum_{k_from <= k <= k_max} (k Delta) e^{-k Delta} g(k Delta)^2
// plus the rigorous tail beyond k_max. Requires k_max Delta >= max(2d+2, 1).
DiscreteSum weighted_discrete_tail(const RatPoly& g, const Rational& delta, long k_from,
                                   long k_max);

// Exact value of Delta * sum_k (k Delta) * [C(n-k-2,d2-1)/C(n-1,d2-1)] * g(k Delta)^2
// over k = 0..n-d2-1, the binomial-weighted side of the distribution
// comparison.
Rational binomial_weighted_sum(long n, int d2, const RatPoly& g);

struct DistDiffResult {
  bool precondition_ok = false;
  std::string violation;  // empty when ok
  Rational delta{0};
  Rational lhs{0};     // exact binomial-weighted sum
  Interval rhs;        // (Delta/2) sum - (1/10) integral, rigorous
  Interval margin;     // lhs - rhs
  bool margin_nonneg = false;  // margin.lo >= 0 under outward rounding
};

// Distribution-difference inequality at Delta = 2 d2 / n; preconditions
// (4d+2) ln(d2) + 2 ln(20) <= d2 and 16 d2^2 <= n are verified with outward
// rounding and violations are reported, not silently computed.
DistDiffResult distribution_difference_margin(long n, int d2, int d, const RatPoly& g);

// Empirical validation of the assembled constants: measured error <= bound
// for g = P_d, d in {2,4,8}, Delta in {1/10, 1/100}. Memoized per t; the
// certifier refuses to use constants that fail this.
bool validate_error_bound(int t);

}  // namespace opsos

#endif
