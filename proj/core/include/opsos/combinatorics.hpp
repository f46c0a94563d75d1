#ifndef OPSOS_COMBINATORICS_HPP
#define OPSOS_COMBINATORICS_HPP

#include <vector>

#include "opsos/rational.hpp"

namespace opsos {

// Exact C(n,k); 0 when k < 0 or k > n. Rejects n < 0.
// Computed as an incremental product of exact divisions, so n may be large
// as long as k is moderate. Safe for concurrent callers.
Integer binomial_z(long n, long k);
Rational binomial(long n, long k);

// n! for small n (cached, concurrent reads + idempotent fills).
Integer factorial(unsigned long n);

// x(x-1)...(x-j+1); falling(x, 0) = 1.
Integer falling_z(const Integer& x, unsigned long j);
Rational falling(const Rational& x, unsigned long j);

// Uniform helpers for randomized suites (deterministic given the seed).
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // value in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  // rational with numerator in [-mag, mag] and denominator in [1, den]
  Rational rational(long mag, long den) {
    Rational q(range(-mag, mag), range(1, den));
    q.canonicalize();
    return q;
  }
};

}  // namespace opsos

#endif
