#include "opsos/sym_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace opsos {

std::string SymMatrix::to_json() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? "," : "") << "[";
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << '"' << to_string(at(i, j)) << '"';
    os << "]";
  }
  os << "]";
  return os.str();
}

Rational quadratic_form(const SymMatrix& m, const std::vector<Rational>& v) {
  Rational acc(0);
  for (int i = 0; i < m.dim(); ++i) {
    if (sign(v[i]) == 0) continue;
    for (int j = 0; j < m.dim(); ++j) {
      if (sign(v[j]) == 0) continue;
      acc += v[i] * m.at(i, j) * v[j];
    }
  }
  return acc;
}

namespace {

// Recursive rational elimination that also produces a negative direction.
// Used only once a fast verdict says "not PSD", and for small matrices, so
// coefficient growth is acceptable.
struct WitnessSearch {
  // Returns empty vector if PSD, else v (in the local index space) with
  // v^T A v < 0.
  static std::vector<Rational> search(std::vector<std::vector<Rational>> a) {
    size_t n = a.size();
    if (n == 0) return {};
    // Any negative diagonal entry is itself a witness.
    for (size_t i = 0; i < n; ++i)
      if (sign(a[i][i]) < 0) {
        std::vector<Rational> v(n, Rational(0));
        v[i] = 1;
        return v;
      }
    // Find a positive pivot.
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (sign(a[i][i]) > 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // All diagonal entries are zero: PSD iff the whole matrix is zero.
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (sign(a[i][j]) != 0) {
            std::vector<Rational> v(n, Rational(0));
            v[i] = 1;
            v[j] = sign(a[i][j]) > 0 ? Rational(-1) : Rational(1);
            return v;
          }
      return {};
    }
    // Schur complement on the remaining indices.
    std::vector<size_t> rest;
    for (size_t i = 0; i < n; ++i)
      if (i != piv) rest.push_back(i);
    std::vector<std::vector<Rational>> s(rest.size(),
                                         std::vector<Rational>(rest.size()));
    for (size_t x = 0; x < rest.size(); ++x)
      for (size_t y = 0; y < rest.size(); ++y)
        s[x][y] = a[rest[x]][rest[y]] -
                  a[rest[x]][piv] * a[piv][rest[y]] / a[piv][piv];
    std::vector<Rational> sub = search(std::move(s));
    if (sub.empty()) return {};
    std::vector<Rational> v(n, Rational(0));
    Rational dot(0);
    for (size_t x = 0; x < rest.size(); ++x) {
      v[rest[x]] = sub[x];
      dot += a[piv][rest[x]] * sub[x];
    }
    v[piv] = -dot / a[piv][piv];
    return v;
  }
};

}  // namespace

PsdResult ldl_status(const SymMatrix& m) {
  const int n = m.dim();
  PsdResult res;
  if (n == 0) return res;

  // Clear denominators: scaling by a positive integer preserves PSD status.
  Integer scale(1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());

  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = m.at(i, j) * Rational(scale);
      a[i][j] = v.get_num();  // denominator is 1 after scaling
    }

  // Fraction-free symmetric elimination (Bareiss). All chosen pivots are
  // positive, so transformed diagonal signs match the true Schur-complement
  // signs and every exact division below is exact.
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  Integer prev_pivot(1);
  bool not_psd = false;

  while (!active.empty() && !not_psd) {
    int piv = -1;
    bool all_zero_diag = true;
    for (int i : active) {
      int sg = sign(a[i][i]);
      if (sg < 0) {
        not_psd = true;
        break;
      }
      if (sg > 0) {
        all_zero_diag = false;
        if (piv < 0 || a[i][i] > a[piv][piv]) piv = i;
      }
    }
    if (not_psd) break;
    if (all_zero_diag) {
      for (size_t x = 0; x < active.size() && !not_psd; ++x)
        for (size_t y = x + 1; y < active.size(); ++y)
          if (sign(a[active[x]][active[y]]) != 0) {
            not_psd = true;
            break;
          }
      break;
    }
    std::vector<int> rest;
    for (int i : active)
      if (i != piv) rest.push_back(i);
    const Integer p = a[piv][piv];
    for (size_t x = 0; x < rest.size(); ++x)
      for (size_t y = x; y < rest.size(); ++y) {
        int i = rest[x], j = rest[y];
        Integer v = a[i][j] * p - a[i][piv] * a[piv][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
        a[i][j] = v;
        a[j][i] = a[i][j];
      }
    prev_pivot = p;
    active = std::move(rest);
  }

  if (!not_psd) return res;

  // Rebuild an exact negative direction on the original matrix.
  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = m.at(i, j);
  std::vector<Rational> v = WitnessSearch::search(std::move(q));
  if (v.empty()) throw std::logic_error("ldl_status: verdict/witness disagreement");
  res.psd = false;
  res.witness = std::move(v);
  res.witness_value = quadratic_form(m, res.witness);
  if (sign(res.witness_value) >= 0)
    throw std::logic_error("ldl_status: witness is not negative");
  return res;
}

std::vector<Rational> vandermonde_solve(int t, const std::vector<Rational>& rhs) {
  if (t < 0) throw std::invalid_argument("vandermonde_solve: t must be >= 0");
  const int n = t + 1;
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("vandermonde_solve: rhs must have length t+1");

  // Augmented Gaussian elimination; M is a Vandermonde matrix on nodes
  // 0..t, hence invertible.
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(n + 1));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      aug[a][b] = (a == 0) ? Rational(1) : pow(Rational(b), static_cast<unsigned long>(a));
    aug[a][n] = rhs[a];
  }
  for (int col = 0; col < n; ++col) {
    int p = col;
    while (p < n && sign(aug[p][col]) == 0) ++p;
    if (p == n) throw std::logic_error("vandermonde_solve: singular");
    std::swap(aug[p], aug[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || sign(aug[r][col]) == 0) continue;
      Rational f = aug[r][col] / aug[col][col];
      for (int c = col; c <= n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

}  // namespace opsos
