#include "opsos/quadrature.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "opsos/combinatorics.hpp"
#include "opsos/laguerre.hpp"
#include "opsos/sym_matrix.hpp"

namespace opsos {

QuadScheme quad_coefficients(int t) {
  if (t < 1 || t > 6) throw std::invalid_argument("quad_coefficients: 1 <= t <= 6");
  std::vector<Rational> v(t + 1);
  for (int a = 0; a <= t; ++a)
    v[a] = pow(Rational(t), static_cast<unsigned long>(a)) / Rational(a + 1);
  return QuadScheme{t, vandermonde_solve(t, v)};
}

namespace {
Rational correction_weight_sum(const QuadScheme& s) {
  // sum_{b=1}^{t} |c_{b+1}|, the weights applied at shifted sample points.
  Rational acc(0);
  for (int b = 1; b <= s.t; ++b) acc += Rational(abs(s.c[b]));
  return acc;
}
}  // namespace

ErrorBoundConstants error_bound_constants(int t) {
  QuadScheme s = quad_coefficients(t);
  Rational csum = correction_weight_sum(s);

  ErrorBoundConstants e;
  e.t = t;
  // Head term: the interval-average and endpoint-correction contributions are
  // each at most (t Delta)^2 (d+1)^2 e^{2 t d Delta} times (1 + csum);
  // (d+1)^2/d^2 <= 4 for d >= 1 turns this into a d-free constant.
  Rational degree_sup1(4);
  e.c1 = degree_sup1 * Rational(t) * Rational(t) * (Rational(1) + csum);

  // Derivative term: (t Delta)^{t+1} (t/(t+1)! + csum/t!) times the
  // derivative-integral factor (t+4)(d+8)(d+1)(3d)^t; (d+8)(d+1)/d^2 <= 18
  // for d >= 1.
  Rational taylor_tail = Rational(t) / Rational(factorial(t + 1)) +
                         csum / Rational(factorial(t));
  Rational degree_sup2(18);
  Rational deriv_factor = Rational(t + 4) * pow(Rational(3), static_cast<unsigned long>(t));
  Rational head_scale = pow(Rational(t), static_cast<unsigned long>(t + 1));
  e.c2 = degree_sup2 * deriv_factor * head_scale * taylor_tail;

  e.trace = {
      {"correction_weight_sum", to_string(csum),
       "sum of |c_{b+1}| over the shifted sample points b = 1..t"},
      {"head_scale_sq", to_string(Rational(t) * Rational(t)),
       "t^2 from bounding the head interval averages at x <= t*Delta"},
      {"degree_ratio_sup_head", to_string(degree_sup1),
       "sup over d >= 1 of (d+1)^2/d^2, absorbing the (d+1)^2 envelope"},
      {"C1", to_string(e.c1), "head constant: 4 t^2 (1 + correction_weight_sum)"},
      {"taylor_tail", to_string(taylor_tail),
       "t/(t+1)! + correction_weight_sum/t!, the Taylor remainder weights"},
      {"derivative_integral_factor", to_string(deriv_factor),
       "(t+4) 3^t from the (t+1)-th derivative integral bound"},
      {"head_scale_pow", to_string(head_scale), "t^{t+1} from (t*Delta)^{t+1}"},
      {"degree_ratio_sup_deriv", to_string(degree_sup2),
       "sup over d >= 1 of (d+8)(d+1)/d^2"},
      {"C2", to_string(e.c2),
       "derivative constant: 18 (t+4) 3^t t^{t+1} taylor_tail"},
  };
  return e;
}

std::string ErrorBoundConstants::trace_json() const {
  std::ostringstream os;
  os << "{\"t\":" << t << ",\"C1\":\"" << to_string(c1) << "\",\"C2\":\""
     << to_string(c2) << "\",\"factors\":[";
  for (size_t i = 0; i < trace.size(); ++i) {
    if (i) os << ",";
    os << "{\"name\":\"" << trace[i].name << "\",\"value\":\"" << trace[i].value
       << "\",\"role\":\"" << trace[i].role << "\"}";
  }
  os << "]}";
  return os.str();
}

Interval integration_error_bound(int t, int d, const Rational& delta) {
  if (d < 1) throw std::invalid_argument("integration_error_bound: d must be >= 1");
  if (sign(delta) <= 0)
    throw std::invalid_argument("integration_error_bound: delta must be > 0");
  ErrorBoundConstants e = error_bound_constants(t);
  Rational dd = Rational(d) * delta;
  Interval head = Interval::exact(e.c1 * dd * dd) *
                  Interval::exp(Interval::exact(Rational(2 * t) * dd));
  Interval deriv =
      Interval::exact(e.c2 * Rational(d) * pow(dd, static_cast<unsigned long>(t + 1)));
  return head + deriv;
}

long default_k_max(int d, const Rational& delta) {
  if (sign(delta) <= 0) throw std::invalid_argument("default_k_max: delta must be > 0");
  int dd = std::max(d, 2);
  Interval ln_d = Interval::ln(Interval::exact(Rational(dd)));
  Interval need =
      (Interval::exact(50) + Interval::exact(Rational(4 * std::max(d, 0))) * ln_d) /
      Interval::exact(delta);
  long k1 = static_cast<long>(need.hi_d()) + 1;
  Rational floor_x = Rational(2 * std::max(d, 0) + 2) / delta;
  Integer fl = floor_x.get_num() / floor_x.get_den();
  long k2 = fl.get_si() + 2;
  return std::max(k1, k2);
}

DiscreteSum weighted_discrete_sum(const RatPoly& g, const Rational& delta, long k_max) {
  return weighted_discrete_tail(g, delta, 0, k_max);
}

DiscreteSum weighted_discrete_tail(const RatPoly& g, const Rational& delta, long k_from,
                                   long k_max) {
  if (sign(delta) <= 0)
    throw std::invalid_argument("weighted_discrete_sum: delta must be > 0");
  DiscreteSum out;
  if (g.is_zero()) return out;
  const int d = g.degree();
  const Rational x_cut = Rational(k_max) * delta;
  if (x_cut < Rational(std::max(2 * d + 2, 1)))
    throw std::invalid_argument("weighted_discrete_sum: k_max too small for the tail bound");

  // value: exact rational factors times an enclosure of e^{-k Delta}.
  Interval q = Interval::exp(Interval::exact(-delta));
  Interval ek = Interval::exp(Interval::exact(-delta * Rational(k_from)));
  Interval acc;
  for (long k = std::max(k_from, 0L); k <= k_max; ++k) {
    if (k > std::max(k_from, 0L)) ek = ek * q;
    if (k == 0) continue;  // k=0 term vanishes
    Rational gk = g(Rational(k) * delta);
    Rational factor = delta * Rational(k) * delta * gk * gk;
    acc += Interval::exact(factor) * ek;
  }
  out.value = acc;

  // tail: g^2(y) <= 2 (2y)^{2d} <g,g> for y >= 1, and
  // sum_{k > k_max} Delta phi(k Delta) <= integral_{x_cut}^inf phi with
  // phi(x) = x^{2d+1} e^{-x}, decreasing there. The incomplete-gamma integral
  // is (2d+1)! e^{-X} sum_i X^i/i!.
  Rational ig = weighted_inner_product(g, g);
  Rational gamma_poly(0);
  for (int i = 0; i <= 2 * d + 1; ++i) {
    Integer scale = factorial(2 * d + 1);
    mpz_divexact(scale.get_mpz_t(), scale.get_mpz_t(), factorial(i).get_mpz_t());
    gamma_poly += Rational(scale) * pow(x_cut, static_cast<unsigned long>(i));
  }
  Rational pref = pow(Rational(2), static_cast<unsigned long>(2 * d + 1)) * ig * gamma_poly;
  Interval tail_hi = Interval::exact(pref) * Interval::exp(Interval::exact(-x_cut));
  out.tail = tail_hi * Interval::hull(Rational(0), Rational(1));
  return out;
}

Rational binomial_weighted_sum(long n, int d2, const RatPoly& g) {
  if (d2 < 1 || d2 > n) throw std::invalid_argument("binomial_weighted_sum: 1 <= d2 <= n");
  const int d = std::max(g.degree(), 0);
  const Rational delta = Rational(2 * static_cast<long>(d2)) / Rational(n);

  // G(k) = D n^d g(2 d2 k / n) is an integer polynomial in k, where D clears
  // the denominators of g. The sum then runs over integers only.
  Integer dclear(1);
  for (int p = 0; p <= g.degree(); ++p)
    mpz_lcm(dclear.get_mpz_t(), dclear.get_mpz_t(), g.coeff(p).get_den().get_mpz_t());
  std::vector<Integer> gcoef(static_cast<size_t>(d) + 1, Integer(0));
  for (int p = 0; p <= g.degree(); ++p) {
    Rational scaled = g.coeff(p) * Rational(dclear);  // integer
    Integer c = scaled.get_num();
    c *= pow(Integer(2 * static_cast<long>(d2)), static_cast<unsigned long>(p));
    c *= pow(Integer(n), static_cast<unsigned long>(d - p));
    gcoef[p] = c;
  }
  auto eval_g = [&](long k) {
    Integer acc(0);
    for (int p = d; p >= 0; --p) {
      acc *= Integer(k);
      acc += gcoef[p];
    }
    return acc;
  };

  Integer sum(0);
  Integer w = binomial_z(n - 2, d2 - 1);  // C(n-k-2, d2-1) at k = 0
  for (long k = 0; k <= n - d2 - 1; ++k) {
    if (k > 0) {
      Integer gk = eval_g(k);
      sum += Integer(k) * w * gk * gk;
    }
    if (k < n - d2 - 1) {
      // C(n-k-3, d2-1) = C(n-k-2, d2-1) * (n-k-1-d2) / (n-k-2)
      w *= Integer(n - k - 1 - d2);
      mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), Integer(n - k - 2).get_mpz_t());
    }
  }
  Rational denom = Rational(binomial_z(n - 1, d2 - 1)) * Rational(dclear * dclear) *
                   Rational(pow(Integer(n), static_cast<unsigned long>(2 * d)));
  return delta * delta * Rational(sum) / denom;
}

DistDiffResult distribution_difference_margin(long n, int d2, int d, const RatPoly& g) {
  DistDiffResult r;
  r.delta = Rational(2 * static_cast<long>(d2)) / Rational(n);
  if (d < 1) {
    r.violation = "d must be >= 1";
    return r;
  }
  if (g.degree() > d) {
    r.violation = "deg(g) exceeds d";
    return r;
  }
  if (Integer(16) * Integer(d2) * Integer(d2) > Integer(n)) {
    r.violation = "upper precondition 16 d2^2 <= n fails";
    return r;
  }
  Interval lower_cond =
      Interval::exact(Rational(4 * d + 2)) * Interval::ln(Interval::exact(Rational(d2))) +
      Interval::exact(2) * Interval::ln(Interval::exact(Rational(20)));
  if (!lower_cond.definitely_le(Rational(d2))) {
    r.violation = "lower precondition (4d+2) ln(d2) + 2 ln(20) <= d2 fails";
    return r;
  }
  r.precondition_ok = true;

  r.lhs = binomial_weighted_sum(n, d2, g);
  Rational ig = weighted_inner_product(g, g);
  DiscreteSum s = weighted_discrete_sum(g, r.delta, default_k_max(d, r.delta));
  Interval total = s.value + s.tail;
  r.rhs = total * Interval::exact(Rational(1, 2)) - Interval::exact(ig / Rational(10));
  r.margin = Interval::exact(r.lhs) - r.rhs;
  r.margin_nonneg = r.margin.definitely_ge(Rational(0));
  return r;
}

bool validate_error_bound(int t) {
  static std::map<int, bool> cache;
  static std::mutex mu;
  {
    std::lock_guard lk(mu);
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
  }
  bool ok = true;
  for (int d : {2, 4, 8}) {
    for (long den : {10L, 100L}) {
      Rational delta(1, den);
      RatPoly g = h_poly(d).P;
      Rational ig = weighted_inner_product(g, g);
      DiscreteSum s = weighted_discrete_sum(g, delta, default_k_max(d, delta));
      Interval diff = (s.value + s.tail) - Interval::exact(ig);
      Interval bound = integration_error_bound(t, d, delta) * Interval::exact(ig);
      // |measured| must sit below the bound's lower enclosure.
      ok = ok && diff.abs().definitely_le(bound);
      if (!ok) break;
    }
    if (!ok) break;
  }
  std::lock_guard lk(mu);
  cache[t] = ok;
  return ok;
}

}  // namespace opsos
