#ifndef OPSOS_WITNESS_HPP
#define OPSOS_WITNESS_HPP

#include <optional>

#include "opsos/ratpoly.hpp"
#include "opsos/sym_matrix.hpp"

namespace opsos {

// T_m via the three-term recurrence; integer coefficients, leading
// coefficient 2^(m-1) for m >= 1.
RatPoly chebyshev_poly(int m);

// ceil(sqrt(n) * (log2(n) + 1) / 2), computed exactly (closed form when
// n = 4^k, outward interval refinement otherwise).
int witness_degree_bound(int n);

// Moment matrix of the signed form g -> (1/n) * sum_{u=-1}^{n-2} u g(u)^2 on
// the monomial basis 1, u, ..., u^d:  entry(a,b) = (1/n) sum u^{a+b+1}.
SymMatrix w_moment_form(int n, int d);

struct WitnessResult {
  int n = 0;
  int m = 0;            // witness degree, = witness_degree_bound(n)
  RatPoly g;            // T_m(-1 + 2x/n)
  Rational raw_sum;     // sum_{u=-1}^{n-2} u g(u)^2
  Rational value;       // raw_sum / n  (w_1 takes n equally likely values)
  Rational value_alt;   // raw_sum / (n-1), the alternative normalization;
                        // both normalizations share the sign of raw_sum
};

// The explicit negative witness for n >= 4; value < 0 exactly.
WitnessResult chebyshev_witness(int n);

struct FailingDegree {
  int m_star = 0;
  std::vector<Rational> direction;  // coefficients of g with form value < 0
  Rational form_value{0};
};

// Smallest m <= d_max with w_moment_form(n, m) not PSD, with an exact
// negative direction; absent if the form stays PSD through d_max.
std::optional<FailingDegree> minimal_failing_degree(int n, int d_max);

}  // namespace opsos

#endif
