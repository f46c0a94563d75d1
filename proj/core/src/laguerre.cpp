#include "opsos/laguerre.hpp"

#include "opsos/combinatorics.hpp"

namespace opsos {

Rational HBasisElement::norm_square() const {
  return Rational(factorial(k) * factorial(k + 1));
}

HBasisElement h_poly(int k) {
  if (k < 0) throw std::invalid_argument("h_poly: k must be >= 0");
  // P(x) = sum_j (-1)^(k-j) C(k,j) (k+1)!/(j+1)! x^j
  std::vector<Rational> c(k + 1);
  for (int j = 0; j <= k; ++j) {
    Integer v = binomial_z(k, j) * factorial(k + 1);
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), factorial(j + 1).get_mpz_t());
    c[j] = Rational(((k - j) % 2 == 0) ? v : -v);
  }
  return HBasisElement{k, RatPoly(std::move(c))};
}

namespace {
Rational moment_pairing(const RatPoly& f, const RatPoly& g, int shift) {
  // sum over coefficient pairs of (p + q + shift)!.
  Rational acc(0);
  for (int p = 0; p <= f.degree(); ++p) {
    if (sign(f.coeff(p)) == 0) continue;
    for (int q = 0; q <= g.degree(); ++q) {
      if (sign(g.coeff(q)) == 0) continue;
      acc += f.coeff(p) * g.coeff(q) * Rational(factorial(p + q + shift));
    }
  }
  return acc;
}
}  // namespace

Rational weighted_inner_product(const RatPoly& f, const RatPoly& g) {
  return moment_pairing(f, g, 1);
}

Rational inner_product_exp_weight(const RatPoly& f, const RatPoly& g) {
  return moment_pairing(f, g, 0);
}

std::map<int, Surd> h_derivative_expansion(int k) {
  if (k < 0) throw std::invalid_argument("h_derivative_expansion: k must be >= 0");
  std::map<int, Surd> out;
  for (int kp = 0; kp < k; ++kp) {
    // (k!/k'!) sqrt(k'!(k'+1)!) / sqrt(k!(k+1)!) = sqrt((k+1)(k'+1)) / (k+1)
    Rational base(1, k + 1);
    if ((k - 1 - kp) % 2 == 1) base = -base;
    out[kp] = make_surd(base, static_cast<unsigned long>((k + 1) * (kp + 1)));
  }
  return out;
}

Rational GExpansion::parseval_sum() const {
  Rational acc(0);
  for (const auto& s : a) acc += s.square();
  return acc;
}

RatPoly GExpansion::reconstruct() const {
  RatPoly g;
  for (size_t k = 0; k < q.size(); ++k) {
    if (sign(q[k]) == 0) continue;
    Rational scale = q[k] / Rational(factorial(k) * factorial(k + 1));
    g = g + h_poly(static_cast<int>(k)).P * scale;
  }
  return g;
}

GExpansion expand_in_h(const RatPoly& g) {
  GExpansion e;
  int d = std::max(g.degree(), 0);
  for (int k = 0; k <= d; ++k) {
    HBasisElement hk = h_poly(k);
    Rational qk = weighted_inner_product(g, hk.P);
    e.q.push_back(qk);
    // a_k = q_k / (k! sqrt(k+1)) = (q_k / (k! (k+1))) sqrt(k+1)
    Rational coeff = qk / (Rational(factorial(k)) * Rational(k + 1));
    e.a.push_back(make_surd(coeff, static_cast<unsigned long>(k + 1)));
  }
  return e;
}

ApproxMargin approx_statement_margin(int d, const Rational& delta, const RatPoly& g) {
  if (g.degree() > d)
    throw std::invalid_argument("approx_statement_margin: deg(g) exceeds d");
  ApproxMargin m;
  m.lhs = weighted_inner_product(g, g);
  Rational gm = g(-delta);
  m.rhs = Rational(10) * delta * delta * gm * gm;
  m.margin = m.lhs - m.rhs;
  return m;
}

bool approx_condition_holds(int d, const Rational& delta) {
  Interval lhs = Interval::exact(Rational(10) * Rational(d + 1) * Rational(d + 1) *
                                 delta * delta) *
                 Interval::exp(Interval::exact(Rational(2 * d) * delta));
  return lhs.definitely_le(Rational(1));
}

namespace {

// Antiderivative of f(x) x e^{-x} is -e^{-x} Q(x) with
// Q = sum_p c_p sum_{i<=p+1} (p+1)!/i! x^i  where c_p are the coefficients
// of f. Exact rational polynomial.
RatPoly weighted_antiderivative_poly(const RatPoly& f) {
  RatPoly q;
  for (int p = 0; p <= f.degree(); ++p) {
    if (sign(f.coeff(p)) == 0) continue;
    std::vector<Rational> c(p + 2, Rational(0));
    for (int i = 0; i <= p + 1; ++i) {
      Integer v = factorial(p + 1);
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), factorial(i).get_mpz_t());
      c[i] = Rational(v) * f.coeff(p);
    }
    q = q + RatPoly(std::move(c));
  }
  return q;
}

Interval exp_neg(const Rational& x) { return Interval::exp(Interval::exact(-x)); }

}  // namespace

Interval integral_weighted(const RatPoly& f, const Rational& a,
                           const std::optional<Rational>& b) {
  RatPoly q = weighted_antiderivative_poly(f);
  // integral_a^b = e^{-a} Q(a) - e^{-b} Q(b); the b term vanishes at infinity.
  Interval head = exp_neg(a) * Interval::exact(q(a));
  if (!b) return head;
  return head - exp_neg(*b) * Interval::exact(q(*b));
}

namespace {

// Per-factor isolation: cheaper Sturm chains; valid only when the factors'
// root sets are pairwise disjoint (checked via gcds). Empty return means
// "fall back to isolating the product".
std::vector<RootBracket> isolate_from_factors(const std::vector<RatPoly>& factors,
                                              const Rational& bound,
                                              const Rational& bracket_width) {
  std::vector<RatPoly> sfs;
  for (const auto& f : factors) {
    RatPoly sf = squarefree_part(f);
    while (!sf.is_zero() && sign(sf.coeff(0)) == 0)
      sf = poly_divmod(sf, RatPoly::x()).first;
    if (sf.degree() > 0) sfs.push_back(sf);
  }
  for (size_t i = 0; i < sfs.size(); ++i)
    for (size_t j = i + 1; j < sfs.size(); ++j)
      if (poly_gcd(sfs[i], sfs[j]).degree() > 0) return {};

  struct Tagged {
    RootBracket br;
    size_t owner;
  };
  std::vector<Tagged> all;
  for (size_t i = 0; i < sfs.size(); ++i) {
    if (sign(sfs[i](Rational(0))) == 0 || sign(sfs[i](bound)) == 0) return {};
    for (const auto& r : isolate_roots(sfs[i], Rational(0), bound))
      all.push_back({refine_bracket(sfs[i], r, bracket_width), i});
  }
  // Refine overlapping brackets from different factors until disjoint; the
  // roots are distinct, so this terminates.
  bool changed = true;
  Rational width = bracket_width;
  while (changed) {
    changed = false;
    std::sort(all.begin(), all.end(),
              [](const Tagged& a, const Tagged& b) { return a.br.lo < b.br.lo; });
    for (size_t i = 0; i + 1 < all.size(); ++i)
      if (all[i + 1].br.lo < all[i].br.hi) {
        width /= 16;
        all[i].br = refine_bracket(sfs[all[i].owner], all[i].br, width);
        all[i + 1].br = refine_bracket(sfs[all[i + 1].owner], all[i + 1].br, width);
        changed = true;
      }
  }
  std::vector<RootBracket> out;
  for (const auto& t : all) out.push_back(t.br);
  return out;
}

}  // namespace

Interval integral_abs_weighted(const RatPoly& f, const Rational& bracket_width,
                               const std::vector<RatPoly>& factors) {
  if (f.is_zero()) return Interval();
  Rational bound = cauchy_root_bound(f);
  while (sign(f(bound)) == 0) bound += 1;

  // Sign changes of f on (0, inf) happen only at roots of the square-free
  // part, so f keeps a strict sign between consecutive root brackets.
  // Integrate |f| as +-integral f on those segments, enclosing each refined
  // bracket by a width * sup bound.
  std::vector<RootBracket> roots;
  if (!factors.empty()) roots = isolate_from_factors(factors, bound, bracket_width);
  if (factors.empty() || (roots.empty() && f.degree() > 0)) {
    RatPoly sf = squarefree_part(f);
    // A root at the origin does not create an interior sign change on (0, inf).
    while (!sf.is_zero() && sign(sf.coeff(0)) == 0)
      sf = poly_divmod(sf, RatPoly::x()).first;
    if (sf.degree() > 0) {
      roots = isolate_roots(sf, Rational(0), bound);
      for (auto& r : roots) r = refine_bracket(sf, r, bracket_width);
    } else {
      roots.clear();
    }
  }

  Interval total;
  Rational left(0);
  auto add_signed_segment = [&](const Rational& lo, const Rational& hi) {
    if (hi <= lo) return;
    Rational mid = (lo + hi) / 2;
    int sg = sign(f(mid));
    Interval seg = integral_weighted(f, lo, hi);
    total += (sg >= 0) ? seg : -seg;
  };
  for (const auto& r : roots) {
    add_signed_segment(left, r.lo);
    if (!r.exact && r.hi > r.lo) {
      // |integral over the bracket| <= (hi - lo) * sup |f(x) x e^{-x}|;
      // e^{-x} <= e^{-lo} and |f(x) x| bounded by interval evaluation.
      Interval x_range = Interval::hull(r.lo, r.hi);
      Interval fx;
      for (int p = f.degree(); p >= 0; --p)
        fx = fx * x_range + Interval::exact(f.coeff(p));
      Interval sup = fx.abs() * x_range.abs() * exp_neg(r.lo);
      Interval width = Interval::exact(r.hi - r.lo);
      // The true contribution lies in [0, sup * width].
      total += sup * width * Interval::hull(Rational(0), Rational(1));
    }
    left = r.hi;
  }
  add_signed_segment(left, bound);
  // Tail beyond the Cauchy bound: f has constant sign there.
  Interval tail = integral_weighted(f, bound, std::nullopt);
  total += (sign(f(bound + 1)) >= 0) ? tail : -tail;
  return total;
}

}  // namespace opsos
