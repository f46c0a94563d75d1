#ifndef OPSOS_SYM_MATRIX_HPP
#define OPSOS_SYM_MATRIX_HPP

#include <string>
#include <vector>

#include "opsos/rational.hpp"

namespace opsos {

// Symmetric matrix with exact rational entries. set() mirrors across the
// diagonal so entry(i,j) == entry(j,i) holds by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, Rational(0)) {}

  int dim() const { return n_; }
  const Rational& at(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, const Rational& v) {
    a_[idx(i, j)] = v;
    a_[idx(j, i)] = v;
  }

  std::vector<std::string> basis_labels;

  // Row-major JSON array of arrays of "p/q" strings.
  std::string to_json() const;

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_ = 0;
  std::vector<Rational> a_;
};

// Exact PSD decision. When the matrix is not PSD, `witness` holds a rational
// vector v with v^T M v = witness_value < 0, checked before returning.
struct PsdResult {
  bool psd = true;
  std::vector<Rational> witness;
  Rational witness_value{0};
};

PsdResult ldl_status(const SymMatrix& m);

// Exact value of v^T M v.
Rational quadratic_form(const SymMatrix& m, const std::vector<Rational>& v);

// Solves M_t c = rhs where (M_t)_{ab} = b^a for 0 <= a,b <= t (with 0^0 = 1).
// rhs must have length t+1; the residual of the returned solution is zero.
std::vector<Rational> vandermonde_solve(int t, const std::vector<Rational>& rhs);

}  // namespace opsos

#endif
