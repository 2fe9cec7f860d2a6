#include "mixmult/filtrations.hpp"

#include "mixmult/errors.hpp"

namespace mixmult {

namespace {

Integer from_u64(std::uint64_t v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

}  // namespace

Integer sqrt2_length(std::uint64_t n) {
  return ceil(QuadNumber(Rational(0), Rational(from_u64(n)), 2));
}

Integer norm_length(std::uint64_t n1, std::uint64_t n2) {
  const Integer a = from_u64(n1);
  const Integer b = from_u64(n2);
  const Integer s = a * a + b * b;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  if (r * r < s) r += 1;
  return r;
}

LengthSequence sqrt2_sequence() { return {[](std::uint64_t n) { return sqrt2_length(n); }, 1, Rational(1)}; }

LengthSequence norm_diagonal_sequence() {
  return {[](std::uint64_t n) { return norm_length(n, n); }, 1, Rational(1)};
}

LimitEstimate limit_probe(const LengthSequence& seq, std::uint64_t n_max) {
  if (n_max == 0) throw ComputationError("limit_probe needs n_max >= 1");
  const Integer n = from_u64(n_max);
  Integer denom = 1;
  for (unsigned k = 0; k < seq.dimension; ++k) denom *= n;
  LimitEstimate out;
  out.estimate = Rational(seq.evaluator(n_max), denom);
  out.estimate.canonicalize();
  out.error_bound = Rational(seq.dimension) * seq.defect / Rational(n);
  out.error_bound.canonicalize();
  return out;
}

}  // namespace mixmult
