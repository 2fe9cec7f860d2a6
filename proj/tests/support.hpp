#pragma once

#include <random>

#include "mixmult/geomodel.hpp"

namespace testsupport {

using namespace mixmult;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261016);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational small_rational(long range = 9) {
  long den = uniform(1, 7);
  return Rational(uniform(-range, range), den);
}

inline QuadNumber small_quad(std::int64_t d = 3, long range = 9) {
  return QuadNumber(small_rational(range), small_rational(range), d);
}

inline QuadNumber q(const char* text) { return parse_quad(text, 3); }

// (n, j) both nonnegative, not both zero.
inline std::pair<long, long> random_point(long hi) {
  for (;;) {
    long n = uniform(0, hi), j = uniform(0, hi);
    if (n || j) return {n, j};
  }
}

}  // namespace testsupport
