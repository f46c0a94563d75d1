#include "opsos/certifier.hpp"

#include <sstream>

#include "opsos/combinatorics.hpp"
#include "opsos/quadrature.hpp"

namespace opsos {

namespace {

ConditionResult interval_condition(const std::string& name, const Interval& lhs,
                                   const Rational& rhs) {
  ConditionResult c;
  c.name = name;
  c.lhs_lo = lhs.lo_str();
  c.lhs_hi = lhs.hi_str();
  c.rhs_lo = c.rhs_hi = to_string(rhs);
  c.pass = lhs.definitely_lt(rhs);  // strict: outward-rounded margin > 0
  c.exact = false;
  return c;
}

ConditionResult exact_condition(const std::string& name, const Rational& lhs,
                                const Rational& rhs) {
  ConditionResult c;
  c.name = name;
  c.lhs_lo = c.lhs_hi = to_string(lhs);
  c.rhs_lo = c.rhs_hi = to_string(rhs);
  c.pass = lhs <= rhs;  // exactly decidable, boundary allowed
  c.exact = true;
  return c;
}

// (4d+2) ln(d2) + 2 ln(20)
Interval cond1_lhs(int d, int d2) {
  return Interval::exact(Rational(4 * d + 2)) * Interval::ln(Interval::exact(Rational(d2))) +
         Interval::exact(2) * Interval::ln(Interval::exact(Rational(20)));
}

}  // namespace

std::optional<int> find_d2(int d, long n) {
  if (d < 1) throw std::invalid_argument("find_d2: d must be >= 1");
  for (long d2 = 2; Integer(16) * Integer(d2) * Integer(d2) <= Integer(n); ++d2) {
    if (cond1_lhs(d, static_cast<int>(d2)).definitely_le(Rational(d2)))
      return static_cast<int>(d2);
  }
  return std::nullopt;
}

CertificateReport check_conditions(long n, int d, int d2, int t) {
  CertificateReport rep;
  rep.n = n;
  rep.d = d;
  rep.d2 = d2;
  rep.t = t;
  if (d < 1 || d2 < 1 || n < 1 || t < 1) {
    rep.degenerate = true;
    return rep;
  }
  rep.delta = Rational(2 * static_cast<long>(d2)) / Rational(n);
  const Rational& delta = rep.delta;

  rep.conditions.push_back(
      interval_condition("log_lower", cond1_lhs(d, d2), Rational(d2)));
  rep.conditions.push_back(exact_condition(
      "sqrt_upper", Rational(16) * Rational(d2) * Rational(d2), Rational(n)));

  // 10 (d+1)^2 Delta^2 e^{2 d Delta} <= 1
  Interval near_zero = Interval::exact(Rational(10) * Rational(d + 1) * Rational(d + 1) *
                                       delta * delta) *
                       Interval::exp(Interval::exact(Rational(2 * d) * delta));
  rep.conditions.push_back(interval_condition("near_zero", near_zero, Rational(1)));

  // C1 (d Delta)^2 e^{2 t d Delta} + C2 d (d Delta)^{t+1} <= 1/2, using
  // constants that passed empirical validation.
  if (!validate_error_bound(t)) {
    ConditionResult c;
    c.name = "quadrature_error";
    c.lhs_lo = c.lhs_hi = "unvalidated";
    c.rhs_lo = c.rhs_hi = to_string(Rational(1, 2));
    c.pass = false;
    rep.conditions.push_back(c);
  } else {
    rep.conditions.push_back(interval_condition(
        "quadrature_error", integration_error_bound(t, d, delta), Rational(1, 2)));
  }

  rep.certified = true;
  for (const auto& c : rep.conditions) rep.certified = rep.certified && c.pass;
  return rep;
}

int certified_lower_bound(long n, int t) {
  if (n < 16) throw std::invalid_argument("certified_lower_bound: n must be >= 16");
  int best = 0;
  for (int d = 1;; ++d) {
    std::optional<int> d2 = find_d2(d, n);
    if (!d2) break;  // the minimal feasible d2 is nondecreasing in d
    CertificateReport rep = check_conditions(n, d, *d2, t);
    if (rep.certified) best = d;
  }
  return best;
}

std::string CertificateReport::to_json() const {
  std::ostringstream os;
  os << "{\"n\":" << n << ",\"d\":" << d << ",\"d2\":" << d2 << ",\"t\":" << t;
  if (boolean_variant) os << ",\"m\":" << m;
  os << ",\"element_count\":" << 2 * n << ",\"delta\":\"" << to_string(delta) << "\"";
  if (degenerate) os << ",\"degenerate\":true";
  os << ",\"conditions\":[";
  for (size_t i = 0; i < conditions.size(); ++i) {
    const auto& c = conditions[i];
    if (i) os << ",";
    os << "{\"name\":\"" << c.name << "\",\"lhs_interval\":[\"" << c.lhs_lo << "\",\""
       << c.lhs_hi << "\"],\"rhs_interval\":[\"" << c.rhs_lo << "\",\"" << c.rhs_hi
       << "\"],\"pass\":" << (c.pass ? "true" : "false") << "}";
  }
  os << "],\"certified\":" << (certified ? "true" : "false") << "}";
  return os.str();
}

BooleanPEContext::BooleanPEContext(long n_, long m_)
    : n(n_), m(m_), base(static_cast<int>(n_)) {
  if (m < n - 2)
    throw std::invalid_argument("BooleanPEContext: encoding requires m >= n - 2");
}

BooleanMonomial BooleanMonomial::times(const BooleanMonomial& o) const {
  BooleanMonomial r;
  r.xpart = xpart.times(o.xpart);
  r.zb = zb;
  for (const auto& [jk, mult] : o.zb) r.zb[jk] += mult;
  return r;
}

Rational boolean_pe_eval(const BooleanPEContext& ctx, const BooleanMonomial& mono) {
  if (!mono.xpart.z_free())
    throw std::invalid_argument("boolean_pe_eval: xpart must not contain z variables");
  // Group auxiliaries by element; multiplicities collapse (z(j,k)^2 = z(j,k)).
  std::map<int, std::set<int>> blocks;
  for (const auto& [jk, mult] : mono.zb) {
    if (jk.first < 1 || jk.first > ctx.n || jk.second < 1 || jk.second > ctx.m)
      throw std::invalid_argument("boolean_pe_eval: auxiliary index out of range");
    blocks[jk.first].insert(jk.second);
  }
  PePoly acc = PePoly::monomial(mono.xpart, Rational(1));
  Rational denom(1);
  for (const auto& [j, ks] : blocks) {
    const auto size = static_cast<unsigned long>(ks.size());
    PePoly w = ctx.base.w_poly(j);
    for (unsigned long a = 0; a < size; ++a) {
      PePoly factor = w;
      factor.add(IndexMonomial::one(), -Rational(static_cast<long>(a)));
      acc = acc * factor;
      denom *= Rational(ctx.m) - Rational(static_cast<long>(a));
    }
  }
  return ctx.base.eval(acc) / denom;
}

SymMatrix boolean_signed_form(long n, int d2, int j, int d,
                              const Rational& boundary_coeff) {
  if (d2 < 1 || d2 > n) throw std::invalid_argument("boolean_signed_form: 1 <= d2 <= n");
  if (j < 0) throw std::invalid_argument("boolean_signed_form: j must be >= 0");
  if (d < 0) throw std::invalid_argument("boolean_signed_form: d must be >= 0");
  // Weighted power sums: sum_u C(n-u-1,d2-1) (falling(u,j)/j!) u^p, exact.
  std::vector<Rational> mom(2 * d + 1, Rational(0));
  Integer w = binomial_z(n - 2, d2 - 1);  // C(n-u-1, d2-1) at u = 1
  Integer jfact = factorial(static_cast<unsigned long>(j));
  Integer denom = binomial_z(2 * n - 1, d2 - 1) * jfact;
  std::vector<Integer> sums(2 * d + 1, Integer(0));
  for (long u = 1; u <= n - d2; ++u) {
    Integer fall = falling_z(Integer(u), static_cast<unsigned long>(j));
    Integer base = w * fall;
    Integer up(1);
    for (int p = 0; p <= 2 * d; ++p) {
      sums[p] += base * up;
      up *= Integer(u);
    }
    if (u < n - d2) {
      w *= Integer(n - u - d2);
      mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), Integer(n - u - 1).get_mpz_t());
    }
  }
  for (int p = 0; p <= 2 * d; ++p) mom[p] = Rational(sums[p]) / Rational(denom);

  SymMatrix b(d + 1);
  for (int a = 0; a <= d; ++a)
    for (int c = a; c <= d; ++c) b.set(a, c, mom[a + c]);
  b.set(0, 0, b.at(0, 0) - boundary_coeff);
  for (int a = 0; a <= d; ++a)
    b.basis_labels.push_back(a == 0 ? "1" : "u^" + std::to_string(a));
  return b;
}

std::optional<int> boolean_first_failure(long n, int d2, int j, int d_max) {
  if (j < 1 || j > d_max)
    throw std::invalid_argument("boolean_first_failure: 1 <= j <= d_max");
  const Rational coeff(6, 5);
  for (int d = 0; d <= d_max; ++d)
    if (!ldl_status(boolean_signed_form(n, d2, j, d, coeff)).psd) return d;
  return std::nullopt;
}

CertificateReport check_conditions_boolean(long n, int d, int d2, int t, long m) {
  CertificateReport rep;
  rep.n = n;
  rep.d = d;
  rep.d2 = d2;
  rep.t = t;
  rep.m = m;
  rep.boolean_variant = true;
  if (d < 1 || d2 < 1 || n < 1 || t < 1) {
    rep.degenerate = true;
    return rep;
  }
  const long np = n - 2 * static_cast<long>(d) + 2;
  if (np < 1) {
    rep.degenerate = true;
    return rep;
  }
  rep.delta = Rational(2 * static_cast<long>(d2)) / Rational(np);
  const Rational& delta = rep.delta;

  rep.conditions.push_back(exact_condition("aux_count", Rational(15) * Rational(n) * Rational(d),
                                           Rational(m)));
  rep.conditions.push_back(
      interval_condition("log_lower", cond1_lhs(d, d2), Rational(d2)));
  rep.conditions.push_back(exact_condition(
      "sqrt_upper", Rational(16) * Rational(d2) * Rational(d2), Rational(np)));

  // Exact rational prefactor (n-1)! (n'-d2)! / ((n'-1)! (n-d2)! C(2j-1,j)),
  // then the interval exponential terms, for every j in [d].
  Rational ratio(1);
  for (long v = np; v <= n - 1; ++v) ratio *= Rational(v);
  for (long v = np - static_cast<long>(d2) + 1; v <= n - static_cast<long>(d2); ++v)
    ratio /= Rational(v);
  for (int j = 1; j <= d; ++j) {
    Rational fj = ratio / Rational(binomial_z(2 * j - 1, j));
    Interval lhs = Interval::exact(fj * delta * delta * Rational(d + 1) * Rational(d + 1)) *
                   Interval::exp(Interval::exact(Rational(2 * d * (2 * j - 1)) * delta));
    rep.conditions.push_back(interval_condition(
        "near_zero_j" + std::to_string(j), lhs, Rational(1, 10)));
  }

  if (!validate_error_bound(t)) {
    ConditionResult c;
    c.name = "quadrature_error";
    c.lhs_lo = c.lhs_hi = "unvalidated";
    c.rhs_lo = c.rhs_hi = to_string(Rational(1, 2));
    c.pass = false;
    rep.conditions.push_back(c);
  } else {
    rep.conditions.push_back(interval_condition(
        "quadrature_error", integration_error_bound(t, d, delta), Rational(1, 2)));
  }

  rep.certified = true;
  for (const auto& c : rep.conditions) rep.certified = rep.certified && c.pass;
  return rep;
}

}  // namespace opsos
