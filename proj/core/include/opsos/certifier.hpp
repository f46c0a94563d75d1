#ifndef OPSOS_CERTIFIER_HPP
#define OPSOS_CERTIFIER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opsos/interval.hpp"
#include "opsos/ordering_pe.hpp"
#include "opsos/sym_matrix.hpp"

namespace opsos {

struct ConditionResult {
  std::string name;
  std::string lhs_lo, lhs_hi;  // enclosure of the evaluated left side
  std::string rhs_lo, rhs_hi;  // enclosure (or exact value twice) of the right side
  bool pass = false;
  bool exact = false;  // decided by exact rational comparison (boundary allowed)
};

// Verdicts for the combined lower-bound conditions. `certified` is true only
// if every condition passes; interval-decided conditions require a strictly
// positive outward-rounded margin, exactly-decided ones may sit on the
// boundary.
struct CertificateReport {
  long n = 0;  // the single-variable distribution parameter; the certified
               // statement concerns the ordering principle on 2n elements
  int d = 0;
  int d2 = 0;
  int t = 0;
  Rational delta{0};
  bool boolean_variant = false;
  long m = 0;  // auxiliary-variable count (boolean variant only)
  bool degenerate = false;
  std::vector<ConditionResult> conditions;
  bool certified = false;

  std::string to_json() const;
};

// Smallest d2 with (4d+2) ln(d2) + 2 ln(20) <= d2 (outward-rounded) and
// 16 d2^2 <= n (exact); absent when no d2 fits below sqrt(n)/4.
std::optional<int> find_d2(int d, long n);

// The three lower-bound conditions at Delta = 2 d2 / n. Failures are
// verdicts, not errors; d < 1 is flagged as degenerate input.
CertificateReport check_conditions(long n, int d, int d2, int t);

// Largest d for which some d2 certifies at this t; 0 when none does.
// The certified conclusion excludes pseudo-expectation failures of degree
// <= d/2 on 2n elements. Requires n >= 16.
int certified_lower_bound(long n, int t);

// ---- Boolean auxiliary-variable encoding -------------------------------

// Pseudo-expectation context with m Boolean auxiliaries z(j,k) per element.
struct BooleanPEContext {
  long n;
  long m;  // >= n - 2
  PEContext base;

  BooleanPEContext(long n_, long m_);
};

// Monomial in the x variables and Boolean auxiliaries z(j,k).
struct BooleanMonomial {
  IndexMonomial xpart;                  // z-free
  std::map<std::pair<int, int>, int> zb;  // (j,k) -> multiplicity

  BooleanMonomial times(const BooleanMonomial& o) const;
};

// Rewrites each auxiliary block prod_{k in K} z(j,k) to the falling-factorial
// expression in w_j over the falling factorial of m, then evaluates.
Rational boolean_pe_eval(const BooleanPEContext& ctx, const BooleanMonomial& mono);

// Matrix B(a,b) = sum_{u=1}^{n-d2} r(u) (falling(u,j)/j!) u^{a+b}
//                 - boundary_coeff * [a=0][b=0]
// with r(u) = C(n-u-1, d2-1) / C(2n-1, d2-1).
SymMatrix boolean_signed_form(long n, int d2, int j, int d, const Rational& boundary_coeff);

// First d <= d_max where the form with boundary coefficient 6/5 fails PSD.
std::optional<int> boolean_first_failure(long n, int d2, int j, int d_max);

// Conditions of the Boolean-variant lower bound with n' = n - 2d + 2 and
// Delta = 2 d2 / n', checked for every j in [d]. Requires m >= 15 n d.
CertificateReport check_conditions_boolean(long n, int d, int d2, int t, long m);

}  // namespace opsos

#endif
