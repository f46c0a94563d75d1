#ifndef OPSOS_LAGUERRE_HPP
#define OPSOS_LAGUERRE_HPP

#include <map>
#include <optional>

#include "opsos/interval.hpp"
#include "opsos/ratpoly.hpp"

namespace opsos {

// k-th element of the orthonormal basis for the weight x e^{-x} on [0, inf):
// h_k = P / sqrt(k! (k+1)!) with P an integer-coefficient polynomial of
// degree k and leading coefficient 1.
struct HBasisElement {
  int k = 0;
  RatPoly P;

  Rational norm_square() const;  // k! (k+1)!  (= <P, P>)
};

HBasisElement h_poly(int k);

// <f, g> = integral_0^inf f g x e^{-x} dx via x^p . x^q = (p+q+1)!.
Rational weighted_inner_product(const RatPoly& f, const RatPoly& g);

// Same with weight e^{-x}: x^p . x^q = (p+q)!.
Rational inner_product_exp_weight(const RatPoly& f, const RatPoly& g);

// h_k' = sum_{k' < k} c_{k'} h_{k'}; coefficients are exact surds
// (-1)^(k-1-k') sqrt((k+1)(k'+1)) / (k+1).
std::map<int, Surd> h_derivative_expansion(int k);

// g = sum a_k h_k. q[k] = <g, P_k> is rational; a[k] = q[k]/sqrt(k!(k+1)!)
// as an exact surd. Sum a_k h_k reproduces g exactly.
struct GExpansion {
  std::vector<Rational> q;
  std::vector<Surd> a;

  Rational parseval_sum() const;  // sum a_k^2, rational
  RatPoly reconstruct() const;    // sum q_k P_k / (k!(k+1)!)
};

GExpansion expand_in_h(const RatPoly& g);

struct ApproxMargin {
  Rational lhs;     // <g, g>
  Rational rhs;     // 10 Delta^2 g(-Delta)^2
  Rational margin;  // lhs - rhs
};

// The near-zero comparison behind the continuous lower bound; requires
// deg(g) <= d. Margin is expected nonnegative whenever
// 10 (d+1)^2 Delta^2 e^{2 d Delta} <= 1.
ApproxMargin approx_statement_margin(int d, const Rational& delta, const RatPoly& g);

// Checks 10 (d+1)^2 Delta^2 e^{2 d Delta} <= 1 with outward rounding.
bool approx_condition_holds(int d, const Rational& delta);

// Rigorous enclosure of integral_a^b f(x) x e^{-x} dx for a rational-
// coefficient f; b absent means +infinity. Uses the exact antiderivative
// -e^{-x} Q(x) with interval values of e^{-x} at the endpoints.
Interval integral_weighted(const RatPoly& f, const Rational& a,
                           const std::optional<Rational>& b);

// Rigorous enclosure of integral_0^inf |f(x)| x e^{-x} dx via root isolation
// of the square-free part of f and signed exact integration between roots.
// `bracket_width` bounds the width of each refined root bracket. When f is a
// known product, passing the factors lets isolation run per factor (lower
// degree); their roots must be pairwise distinct or the factors are ignored.
Interval integral_abs_weighted(const RatPoly& f,
                               const Rational& bracket_width = Rational(1, 1000000000),
                               const std::vector<RatPoly>& factors = {});

}  // namespace opsos

#endif
