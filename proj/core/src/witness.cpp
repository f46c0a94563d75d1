#include "opsos/witness.hpp"

#include "opsos/interval.hpp"

namespace opsos {

RatPoly chebyshev_poly(int m) {
  if (m < 0) throw std::invalid_argument("chebyshev_poly: m must be >= 0");
  RatPoly t0 = RatPoly::constant(Rational(1));
  if (m == 0) return t0;
  RatPoly t1 = RatPoly::x();
  RatPoly two_x = RatPoly::x() * Rational(2);
  for (int i = 2; i <= m; ++i) {
    RatPoly t2 = two_x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

int witness_degree_bound(int n) {
  if (n < 2) throw std::invalid_argument("witness_degree_bound: n must be >= 2");
  // n = 4^k gives sqrt(n) = 2^k and log2(n) = 2k exactly.
  {
    int k = 0;
    long v = n;
    while (v % 4 == 0) {
      v /= 4;
      ++k;
    }
    if (v == 1 && k >= 1) return (1 << (k - 1)) * (2 * k + 1);
  }
  // Otherwise sqrt(n)(log2 n + 1)/2 is irrational; refine an enclosure until
  // both endpoints share a ceiling.
  for (mpfr_prec_t extra = 0; extra <= 512; extra += 64) {
    mpfr_prec_t prec = Interval::precision() + extra;
    mpfr_t lo, hi, t;
    mpfr_inits2(prec, lo, hi, t, static_cast<mpfr_ptr>(nullptr));
    // lower endpoint
    mpfr_set_si(t, n, MPFR_RNDD);
    mpfr_log2(lo, t, MPFR_RNDD);
    mpfr_add_ui(lo, lo, 1, MPFR_RNDD);
    mpfr_sqrt(t, t, MPFR_RNDD);
    mpfr_mul(lo, lo, t, MPFR_RNDD);
    mpfr_div_ui(lo, lo, 2, MPFR_RNDD);
    // upper endpoint
    mpfr_set_si(t, n, MPFR_RNDU);
    mpfr_log2(hi, t, MPFR_RNDU);
    mpfr_add_ui(hi, hi, 1, MPFR_RNDU);
    mpfr_sqrt(t, t, MPFR_RNDU);
    mpfr_mul(hi, hi, t, MPFR_RNDU);
    mpfr_div_ui(hi, hi, 2, MPFR_RNDU);

    mpfr_ceil(lo, lo);
    mpfr_ceil(hi, hi);
    bool agree = mpfr_cmp(lo, hi) == 0;
    long result = mpfr_get_si(lo, MPFR_RNDN);
    mpfr_clears(lo, hi, t, static_cast<mpfr_ptr>(nullptr));
    if (agree) return static_cast<int>(result);
  }
  throw std::logic_error("witness_degree_bound: enclosure did not separate");
}

SymMatrix w_moment_form(int n, int d) {
  if (n < 2) throw std::invalid_argument("w_moment_form: n must be >= 2");
  if (d < 0) throw std::invalid_argument("w_moment_form: d must be >= 0");
  // Power sums S_p = sum_{u=-1}^{n-2} u^p for p up to 2d+1.
  std::vector<Integer> s(2 * d + 2, Integer(0));
  for (long u = -1; u <= n - 2; ++u) {
    Integer up(1);
    for (int p = 0; p <= 2 * d + 1; ++p) {
      s[p] += up;
      up *= Integer(u);
    }
  }
  SymMatrix m(d + 1);
  for (int a = 0; a <= d; ++a)
    for (int b = a; b <= d; ++b) m.set(a, b, Rational(s[a + b + 1]) / Rational(n));
  for (int a = 0; a <= d; ++a)
    m.basis_labels.push_back(a == 0 ? "1" : "u^" + std::to_string(a));
  return m;
}

WitnessResult chebyshev_witness(int n) {
  if (n < 4) throw std::invalid_argument("chebyshev_witness: n must be >= 4");
  WitnessResult r;
  r.n = n;
  r.m = witness_degree_bound(n);
  r.g = affine_substitute(chebyshev_poly(r.m), Rational(2, n), Rational(-1));
  Rational sum(0);
  for (long u = -1; u <= n - 2; ++u) {
    Rational gu = r.g(Rational(u));
    sum += Rational(u) * gu * gu;
  }
  r.raw_sum = sum;
  r.value = sum / Rational(n);
  r.value_alt = sum / Rational(n - 1);
  return r;
}

std::optional<FailingDegree> minimal_failing_degree(int n, int d_max) {
  if (n < 3) throw std::invalid_argument("minimal_failing_degree: n must be >= 3");
  // Linear ascent: PSD-ness is not assumed monotone in m; every verdict is
  // independent and exact.
  for (int m = 0; m <= d_max; ++m) {
    PsdResult res = ldl_status(w_moment_form(n, m));
    if (!res.psd) {
      FailingDegree f;
      f.m_star = m;
      f.direction = std::move(res.witness);
      f.form_value = std::move(res.witness_value);
      return f;
    }
  }
  return std::nullopt;
}

}  // namespace opsos
