#include "opsos/ordering_pe.hpp"

#include <algorithm>
#include <sstream>

#include "opsos/combinatorics.hpp"

namespace opsos {

namespace {
constexpr size_t kTermBudget = 1'000'000;
constexpr int kSpanBudget = 20;

void check_pair(int i, int j) {
  if (i == j) throw std::invalid_argument("x(i,i) is not a variable");
  if (i < 1 || j < 1) throw std::invalid_argument("indices must be >= 1");
}
}  // namespace

IndexMonomial IndexMonomial::xvar(int i, int j) {
  check_pair(i, j);
  IndexMonomial m;
  m.x.emplace_back(i, j);
  return m;
}

IndexMonomial IndexMonomial::zvar(int j, int mult) {
  if (j < 1) throw std::invalid_argument("indices must be >= 1");
  if (mult < 1) throw std::invalid_argument("z multiplicity must be >= 1");
  IndexMonomial m;
  m.z[j] = mult;
  return m;
}

int IndexMonomial::degree() const {
  int d = static_cast<int>(x.size());
  for (const auto& [j, mult] : z) d += mult;
  return d;
}

IndexMonomial IndexMonomial::times(const IndexMonomial& o) const {
  IndexMonomial r = *this;
  r.x.insert(r.x.end(), o.x.begin(), o.x.end());
  std::sort(r.x.begin(), r.x.end());
  for (const auto& [j, mult] : o.z) r.z[j] += mult;
  return r;
}

IndexMonomial IndexMonomial::times_reduced(const IndexMonomial& o) const {
  IndexMonomial r = times(o);
  r.x.erase(std::unique(r.x.begin(), r.x.end()), r.x.end());
  return r;
}

std::string IndexMonomial::str() const {
  if (x.empty() && z.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  size_t i = 0;
  while (i < x.size()) {
    size_t run = 1;
    while (i + run < x.size() && x[i + run] == x[i]) ++run;
    if (!first) os << "*";
    os << "x(" << x[i].first << "," << x[i].second << ")";
    if (run > 1) os << "^" << run;
    first = false;
    i += run;
  }
  for (const auto& [j, mult] : z) {
    if (!first) os << "*";
    os << "z(" << j << ")";
    if (mult > 1) os << "^" << mult;
    first = false;
  }
  return os.str();
}

IndexMonomial IndexMonomial::parse(std::string_view text) {
  IndexMonomial m;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("monomial parse error at offset " + std::to_string(pos) +
                                ": " + why);
  };
  auto read_int = [&]() -> int {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };

  bool expecting_factor = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) {
      if (expecting_factor) fail("expected factor");
      break;
    }
    if (!expecting_factor) {
      expect('*');
      expecting_factor = true;
      continue;
    }
    char c = text[pos];
    int exponent = 1;
    if (c == '1') {
      ++pos;
    } else if (c == 'x') {
      ++pos;
      expect('(');
      int i = read_int();
      expect(',');
      int j = read_int();
      expect(')');
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        exponent = read_int();
        if (exponent < 1) fail("exponent must be >= 1");
      }
      check_pair(i, j);
      for (int e = 0; e < exponent; ++e) m.x.emplace_back(i, j);
    } else if (c == 'z') {
      ++pos;
      expect('(');
      int j = read_int();
      expect(')');
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        exponent = read_int();
        if (exponent < 1) fail("exponent must be >= 1");
      }
      if (j < 1) fail("indices must be >= 1");
      m.z[j] += exponent;
    } else {
      fail("expected 'x', 'z' or '1'");
    }
    expecting_factor = false;
  }
  std::sort(m.x.begin(), m.x.end());
  return m;
}

PePoly PePoly::monomial(const IndexMonomial& m, const Rational& c) {
  PePoly p;
  if (sign(c) != 0) p.terms.emplace(m, c);
  return p;
}

PePoly& PePoly::add(const IndexMonomial& m, const Rational& c) {
  if (sign(c) == 0) return *this;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sign(it->second) == 0) terms.erase(it);
  }
  return *this;
}

PePoly PePoly::operator+(const PePoly& o) const {
  PePoly r = *this;
  for (const auto& [m, c] : o.terms) r.add(m, c);
  return r;
}

PePoly PePoly::operator-(const PePoly& o) const {
  PePoly r = *this;
  for (const auto& [m, c] : o.terms) r.add(m, -c);
  return r;
}

PePoly PePoly::operator*(const PePoly& o) const {
  PePoly r;
  for (const auto& [m1, c1] : terms)
    for (const auto& [m2, c2] : o.terms) {
      r.add(m1.times_reduced(m2), c1 * c2);
      if (r.terms.size() > kTermBudget)
        throw budget_error("polynomial term budget exceeded");
    }
  return r;
}

PePoly PePoly::operator*(const Rational& s) const {
  PePoly r;
  if (sign(s) == 0) return r;
  for (const auto& [m, c] : terms) r.terms.emplace(m, c * s);
  return r;
}

ConstraintDigraph ConstraintDigraph::from_monomial(const IndexMonomial& m) {
  if (!m.z_free())
    throw std::invalid_argument("ConstraintDigraph requires a z-free monomial");
  ConstraintDigraph g;
  std::set<int> verts;
  for (const auto& [i, j] : m.x) {
    verts.insert(i);
    verts.insert(j);
    g.edges.emplace(i, j);
  }
  g.vertices.assign(verts.begin(), verts.end());
  return g;
}

Integer linear_extension_count(const ConstraintDigraph& g) {
  const int k = static_cast<int>(g.vertices.size());
  if (k > kSpanBudget)
    throw budget_error("linear_extension_count: more than 20 vertices");
  if (k == 0) return Integer(1);

  std::unordered_map<int, int> id;
  for (int v = 0; v < k; ++v) id[g.vertices[v]] = v;
  std::vector<uint32_t> succ(k, 0);  // succ[v]: vertices that must come after v
  for (const auto& [a, b] : g.edges) {
    if (a == b) throw std::invalid_argument("self-loop in constraint digraph");
    auto ia = id.find(a), ib = id.find(b);
    if (ia == id.end() || ib == id.end())
      throw std::invalid_argument("edge endpoint outside vertex set");
    succ[ia->second] |= (1u << ib->second);
  }

  // f[S] = number of valid orders of S; v may be placed last in S iff none of
  // its successors is in S. Counts fit in 64 bits because 20! < 2^63.
  std::vector<uint64_t> f(size_t(1) << k, 0);
  f[0] = 1;
  for (uint32_t s = 1; s < (1u << k); ++s) {
    uint64_t acc = 0;
    for (int v = 0; v < k; ++v)
      if ((s >> v) & 1u) {
        if ((succ[v] & s) == 0) acc += f[s & ~(1u << v)];
      }
    f[s] = acc;
  }
  return Integer(static_cast<unsigned long>(f[(size_t(1) << k) - 1]));
}

long eval_monomial_on_order(const IndexMonomial& m, const std::map<int, int>& position_of) {
  if (!m.z_free())
    throw std::invalid_argument("eval_monomial_on_order requires a z-free monomial");
  for (const auto& [i, j] : m.x) {
    auto pi = position_of.find(i), pj = position_of.find(j);
    if (pi == position_of.end() || pj == position_of.end())
      throw std::invalid_argument("monomial index missing from the order");
    if (pi->second > pj->second) return 0;
  }
  return 1;
}

Rational eval_poly_on_order(const PePoly& p, const std::map<int, int>& position_of) {
  Rational acc(0);
  for (const auto& [m, c] : p.terms)
    if (eval_monomial_on_order(m, position_of)) acc += c;
  return acc;
}

PEContext::PEContext(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("PEContext requires n >= 2");
}

PePoly PEContext::w_poly(int j) const {
  if (j < 1 || j > n_) throw std::invalid_argument("w_poly: index out of range");
  PePoly p;
  for (int i = 1; i <= n_; ++i)
    if (i != j) p.add(IndexMonomial::xvar(i, j), Rational(1));
  p.add(IndexMonomial::one(), Rational(-1));
  return p;
}

PePoly PEContext::z_reduce(const PePoly& p) const {
  PePoly out;
  for (const auto& [m, c] : p.terms) {
    bool odd = false;
    for (const auto& [j, mult] : m.z)
      if (mult % 2 == 1) {
        odd = true;
        break;
      }
    if (odd) continue;  // nonempty odd z-part has pseudo-expectation 0

    IndexMonomial xpart;
    xpart.x = m.x;
    std::sort(xpart.x.begin(), xpart.x.end());
    xpart.x.erase(std::unique(xpart.x.begin(), xpart.x.end()), xpart.x.end());
    PePoly acc = PePoly::monomial(xpart, c);
    for (const auto& [j, mult] : m.z) {
      if (j > n_) throw std::invalid_argument("z index exceeds n");
      PePoly w = w_poly(j);
      for (int e = 0; e < mult / 2; ++e) acc = acc * w;
    }
    out = out + acc;
    if (out.terms.size() > kTermBudget)
      throw budget_error("z_reduce term budget exceeded");
  }
  return out;
}

Rational PEContext::eval_z_free(const IndexMonomial& m) const {
  // Dedupe and detect contradictions before building the digraph.
  std::set<std::pair<int, int>> xs(m.x.begin(), m.x.end());
  for (const auto& [i, j] : xs) {
    if (j > n_ || i > n_) throw std::invalid_argument("index exceeds n");
    if (xs.count({j, i})) return Rational(0);
  }

  std::vector<int> idx;
  for (const auto& [i, j] : xs) {
    idx.push_back(i);
    idx.push_back(j);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const int k = static_cast<int>(idx.size());
  if (k > kSpanBudget) throw budget_error("pe_eval: index span exceeds 20");
  if (k == 0) return Rational(1);

  // Relabel mentioned indices to 1..k (structure-preserving); the value only
  // depends on the relabeled edge set.
  std::map<int, int> relabel;
  for (int v = 0; v < k; ++v) relabel[idx[v]] = v + 1;
  std::string key;
  key.push_back(static_cast<char>(k));
  for (const auto& [i, j] : xs) {
    key.push_back(static_cast<char>(relabel[i]));
    key.push_back(static_cast<char>(relabel[j]));
  }
  {
    std::shared_lock lk(memo_mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  ConstraintDigraph g;
  for (int v = 1; v <= k; ++v) g.vertices.push_back(v);
  for (const auto& [i, j] : xs) g.edges.emplace(relabel[i], relabel[j]);
  Rational val = Rational(linear_extension_count(g)) / Rational(factorial(k));

  std::unique_lock lk(memo_mu_);
  memo_.emplace(key, val);  // idempotent: recomputation yields the same value
  return val;
}

Rational PEContext::eval(const IndexMonomial& m) const {
  return eval(PePoly::monomial(m, Rational(1)));
}

Rational PEContext::eval(const PePoly& p) const {
  PePoly reduced = z_reduce(p);
  Rational acc(0);
  for (const auto& [m, c] : reduced.terms) acc += c * eval_z_free(m);
  return acc;
}

size_t PEContext::memo_size() const {
  std::shared_lock lk(memo_mu_);
  return memo_.size();
}

std::vector<IndexMonomial> PEContext::monomial_basis(int max_degree) const {
  // Variable order: x(1,2), x(1,3), ..., x(n,n-1), z(1), ..., z(n).
  std::vector<IndexMonomial> vars;
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (i != j) vars.push_back(IndexMonomial::xvar(i, j));
  for (int j = 1; j <= n_; ++j) vars.push_back(IndexMonomial::zvar(j));

  std::vector<IndexMonomial> out;
  auto rec = [&](auto&& self, size_t start, int remaining, const IndexMonomial& cur) -> void {
    out.push_back(cur);
    if (remaining == 0) return;
    for (size_t v = start; v < vars.size(); ++v)
      self(self, v, remaining - 1, cur.times(vars[v]));
  };
  rec(rec, 0, max_degree, IndexMonomial::one());
  return out;
}

SymMatrix PEContext::moment_matrix(int d) const {
  if (d < 0 || d % 2 != 0) throw std::invalid_argument("moment_matrix: d must be even");
  if (n_ > 7 || d > 4) throw budget_error("moment_matrix: n <= 7 and d <= 4 required");
  std::vector<IndexMonomial> basis = monomial_basis(d / 2);
  SymMatrix mm(static_cast<int>(basis.size()));
  for (const auto& b : basis) mm.basis_labels.push_back(b.str());
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i; j < basis.size(); ++j)
      mm.set(static_cast<int>(i), static_cast<int>(j), eval(basis[i].times(basis[j])));
  return mm;
}

}  // namespace opsos
