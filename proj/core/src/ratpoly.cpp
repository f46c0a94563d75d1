#include "opsos/ratpoly.hpp"

#include <algorithm>
#include <sstream>

namespace opsos {

Rational RatPoly::operator()(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (o * Rational(-1)); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const Rational& s) const {
  if (sign(s) == 0) return RatPoly();
  std::vector<Rational> r = c_;
  for (auto& v : r) v *= s;
  return RatPoly(std::move(r));
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return RatPoly(std::move(r));
}

std::string RatPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (sign(c_[i]) == 0) continue;
    if (!first) os << (sign(c_[i]) > 0 ? " + " : " - ");
    Rational a = first ? c_[i] : Rational(abs(c_[i]));
    first = false;
    if (i == 0 || a != 1) os << to_string(a);
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

RatPoly affine_substitute(const RatPoly& p, const Rational& a, const Rational& b) {
  if (sign(a) == 0) throw std::invalid_argument("affine_substitute: a must be nonzero");
  RatPoly lin({b, a});
  RatPoly r;
  for (int i = p.degree(); i >= 0; --i) r = r * lin + RatPoly::constant(p.coeff(i));
  return r;
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  std::vector<Rational> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    Rational q = rem[i] / b.leading();
    if (sign(q) == 0) continue;
    quot[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeff(j);
  }
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

namespace {

// Divides by the (positive) absolute value of the leading coefficient; keeps
// signs so the result is usable inside Sturm chains.
RatPoly positive_normalize(const RatPoly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / Rational(abs(p.leading())));
}

int sign_at(const RatPoly& p, const Rational& x) { return sign(p(x)); }

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  std::vector<RatPoly> chain;
  chain.push_back(positive_normalize(p));
  chain.push_back(positive_normalize(p.derivative()));
  while (!chain.back().is_zero()) {
    const RatPoly& s0 = chain[chain.size() - 2];
    const RatPoly& s1 = chain.back();
    RatPoly r = poly_divmod(s0, s1).second;
    chain.push_back(positive_normalize(-r));
  }
  chain.pop_back();
  return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
  int v = 0, prev = 0;
  for (const auto& s : chain) {
    int sg = sign_at(s, x);
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++v;
    prev = sg;
  }
  return v;
}

}  // namespace

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = positive_normalize(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return p;
  RatPoly g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return poly_divmod(p, g).first;
}

Rational cauchy_root_bound(const RatPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational a = abs(p.coeff(i) / p.leading());
    if (a > m) m = a;
  }
  return m + 1;
}

std::vector<RootBracket> isolate_roots(const RatPoly& p, const Rational& a,
                                       const Rational& b) {
  std::vector<RootBracket> out;
  if (p.degree() <= 0) return out;
  auto chain = sturm_chain(p);

  // Counts roots in (lo, hi]; endpoints are adjusted to non-roots before use.
  auto count = [&](const Rational& lo, const Rational& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
  };

  if (sign_at(p, a) == 0 || sign_at(p, b) == 0)
    throw std::invalid_argument("isolate_roots: interval endpoints must not be roots");

  struct Seg {
    Rational lo, hi;
    int roots;
  };
  std::vector<Seg> stack;
  int total = count(a, b);
  if (total > 0) stack.push_back({a, b, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.roots == 1) {
      out.push_back({s.lo, s.hi, false});
      continue;
    }
    Rational mid = (s.lo + s.hi) / 2;
    if (sign_at(p, mid) == 0) {
      out.push_back({mid, mid, true});
      // Shrink a gap around mid until it contains no other root; p is
      // square-free, so this terminates.
      Rational eps = (s.hi - s.lo) / 1024;
      Rational lo2, hi2;
      for (;;) {
        lo2 = mid - eps;
        hi2 = mid + eps;
        while (sign_at(p, lo2) == 0) lo2 = (mid + lo2) / 2;
        while (sign_at(p, hi2) == 0) hi2 = (hi2 + mid) / 2;
        if (count(lo2, hi2) == 1) break;
        eps /= 16;
      }
      int left = count(s.lo, lo2);
      int right = count(hi2, s.hi);
      if (left > 0) stack.push_back({s.lo, lo2, left});
      if (right > 0) stack.push_back({hi2, s.hi, right});
      continue;
    }
    int left = count(s.lo, mid);
    int right = count(mid, s.hi);
    if (left > 0) stack.push_back({s.lo, mid, left});
    if (right > 0) stack.push_back({mid, s.hi, right});
  }
  std::sort(out.begin(), out.end(),
            [](const RootBracket& x, const RootBracket& y) { return x.lo < y.lo; });
  return out;
}

RootBracket refine_bracket(const RatPoly& p, RootBracket br, const Rational& width) {
  if (br.exact) return br;
  int slo = sign_at(p, br.lo);
  int shi = sign_at(p, br.hi);
  if (slo == 0 || shi == 0 || slo == shi)
    throw std::logic_error("refine_bracket: not a sign-change bracket");
  while (br.hi - br.lo > width) {
    Rational mid = (br.lo + br.hi) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) return {mid, mid, true};
    if (sm == slo)
      br.lo = mid;
    else
      br.hi = mid;
  }
  return br;
}

}  // namespace opsos
