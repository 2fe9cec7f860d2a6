#pragma once

// Closed-form length oracles for two filtrations of m-primary ideals.
//
//   I_n = (x^ceil(n sqrt 2))      in k[[x]]:  l(R/I_n) = ceil(n sqrt 2)
//   multigraded norm example:     l = ceil(sqrt(n1^2 + n2^2))
//
// The first has irrational multiplicity sqrt 2; the second is not even
// homogeneous, let alone polynomial.

#include <cstdint>
#include <functional>

#include "mixmult/qfield.hpp"

namespace mixmult {

Integer sqrt2_length(std::uint64_t n);
Integer norm_length(std::uint64_t n1, std::uint64_t n2);

struct LengthSequence {
  std::function<Integer(std::uint64_t)> evaluator;
  unsigned dimension = 1;
  /// Bounded rounding defect of a staircase sequence: |l(n) - c n^d| <= C n^(d-1).
  Rational defect{1};
};

LengthSequence sqrt2_sequence();
/// norm_length(n, n): ceil(n sqrt 2) along the diagonal.
LengthSequence norm_diagonal_sequence();

struct LimitEstimate {
  Rational estimate;     // l(n_max) / n_max^d
  Rational error_bound;  // d * C / n_max
};

/// Throws ComputationError if n_max == 0.
LimitEstimate limit_probe(const LengthSequence& seq, std::uint64_t n_max);

}  // namespace mixmult
