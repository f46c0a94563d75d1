#ifndef OPSOS_ORDERING_PE_HPP
#define OPSOS_ORDERING_PE_HPP

#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "opsos/rational.hpp"
#include "opsos/sym_matrix.hpp"

namespace opsos {

// A product of ordering variables x(i,j) (meaning a_i < a_j) and auxiliary
// variables z(j). x factors form a multiset of ordered pairs with i != j;
// z factors carry multiplicities. Indices are 1-based.
struct IndexMonomial {
  std::vector<std::pair<int, int>> x;  // kept sorted
  std::map<int, int> z;                // j -> multiplicity (> 0)

  static IndexMonomial one() { return {}; }
  static IndexMonomial xvar(int i, int j);
  static IndexMonomial zvar(int j, int mult = 1);

  // Text syntax: factors x(i,j) and z(j) joined by '*', with optional '^k'
  // exponents; "1" denotes the empty monomial.
  static IndexMonomial parse(std::string_view text);
  std::string str() const;

  int degree() const;
  bool z_free() const { return z.empty(); }

  // Plain multiset product (no Boolean reduction).
  IndexMonomial times(const IndexMonomial& o) const;
  // Product with the Boolean x-reduction x(i,j)^2 = x(i,j) applied; values of
  // the pseudo-expectation are unchanged since it respects that ideal.
  IndexMonomial times_reduced(const IndexMonomial& o) const;

  auto operator<=>(const IndexMonomial& o) const = default;
};

// Sparse polynomial over IndexMonomials with rational coefficients.
class PePoly {
 public:
  std::map<IndexMonomial, Rational> terms;

  static PePoly zero() { return {}; }
  static PePoly one() { return monomial(IndexMonomial::one(), Rational(1)); }
  static PePoly monomial(const IndexMonomial& m, const Rational& c);

  PePoly& add(const IndexMonomial& m, const Rational& c);
  PePoly operator+(const PePoly& o) const;
  PePoly operator-(const PePoly& o) const;
  PePoly operator*(const PePoly& o) const;  // uses times_reduced
  PePoly operator*(const Rational& s) const;
  size_t size() const { return terms.size(); }
};

// Directed precedence constraints extracted from a z-free monomial: an edge
// (i, j) means "i must precede j".
struct ConstraintDigraph {
  std::vector<int> vertices;                // sorted distinct
  std::set<std::pair<int, int>> edges;      // no self-loops

  static ConstraintDigraph from_monomial(const IndexMonomial& m);
};

// Number of total orders of the vertex set consistent with every edge; 0 iff
// the digraph has a directed cycle. Subset DP; rejects more than 20 vertices.
Integer linear_extension_count(const ConstraintDigraph& g);

// Evaluates a z-free monomial/polynomial on a concrete total order.
// position_of maps index -> rank (smaller rank = smaller element).
long eval_monomial_on_order(const IndexMonomial& m, const std::map<int, int>& position_of);
Rational eval_poly_on_order(const PePoly& p, const std::map<int, int>& position_of);

// The pseudo-expectation engine for the uniform-orderings values on n
// elements. Evaluation is pure; the structure memo supports concurrent reads
// with idempotent inserts.
class PEContext {
 public:
  explicit PEContext(int n);
  int n() const { return n_; }

  // Exact value on a monomial: z-reduce, expand, then count linear extensions
  // per z-free term. Monomials containing x(i,j)*x(j,i) evaluate to 0.
  Rational eval(const IndexMonomial& m) const;
  Rational eval(const PePoly& p) const;

  // Rewrites every z(j)^2 to (sum_{i != j} x(i,j)) - 1; terms with leftover
  // odd z-multiplicity map to 0; Boolean x-reduction applied.
  PePoly z_reduce(const PePoly& p) const;

  // (sum_{i != j} x(i,j)) - 1 on this context's index range.
  PePoly w_poly(int j) const;

  // All monomials of degree <= max_degree in the x and z variables on [n],
  // in a fixed deterministic order.
  std::vector<IndexMonomial> monomial_basis(int max_degree) const;

  // Moment matrix over the degree <= d/2 basis; d even, d <= 4, n <= 7.
  SymMatrix moment_matrix(int d) const;

  size_t memo_size() const;

 private:
  Rational eval_z_free(const IndexMonomial& m) const;

  int n_;
  mutable std::unordered_map<std::string, Rational> memo_;
  mutable std::shared_mutex memo_mu_;
};

}  // namespace opsos

#endif
