#include "doctest.h"
#include "mixmult/errors.hpp"
#include "mixmult/filtrations.hpp"

using namespace mixmult;

TEST_CASE("sqrt2_length") {
  CHECK(sqrt2_length(0) == 0);
  CHECK(sqrt2_length(1) == 2);
  CHECK(sqrt2_length(5) == 8);
  CHECK(sqrt2_length(10) == 15);
  // 470832 sqrt 2 sits just below 665857.
  CHECK(sqrt2_length(470832) == 665857);
}

TEST_CASE("norm_length") {
  CHECK(norm_length(3, 4) == 5);
  CHECK(norm_length(1, 1) == 2);
  CHECK(norm_length(2, 2) == 3);
  CHECK(norm_length(0, 0) == 0);
  CHECK(norm_length(2, 2) != 2 * norm_length(1, 1));
}

TEST_CASE("limit_probe") {
  const auto est = limit_probe(sqrt2_sequence(), 100000);
  const QuadNumber err = abs(QuadNumber(est.estimate, Rational(0), 2) - QuadNumber::sqrt_of(2));
  CHECK(err <= QuadNumber(Rational(1, 100000)));
  CHECK(est.error_bound == Rational(1, 100000));

  const LengthSequence seven{[](std::uint64_t n) -> Integer { return 7 * Integer(static_cast<unsigned long>(n)); }, 1};
  CHECK(limit_probe(seven, 12345).estimate == 7);

  const auto diag = limit_probe(norm_diagonal_sequence(), 1000);
  CHECK(diag.estimate == Rational(283, 200));
  CHECK_THROWS_AS(limit_probe(sqrt2_sequence(), 0), ComputationError);
}

TEST_CASE("property: sequences are monotone with zero start") {
  for (const auto& seq : {sqrt2_sequence(), norm_diagonal_sequence()}) {
    CHECK(seq.evaluator(0) == 0);
    for (std::uint64_t n = 0; n < 300; ++n) CHECK(seq.evaluator(n) <= seq.evaluator(n + 1));
  }
}

TEST_CASE("property: submultiplicativity of ceil(n sqrt 2)") {
  std::vector<Integer> len(1001);
  for (std::uint64_t n = 0; n <= 1000; ++n) len[n] = sqrt2_length(n);
  bool ok = true;
  for (std::size_t a = 0; a <= 500; ++a)
    for (std::size_t b = 0; b <= 500; ++b) ok = ok && len[a + b] <= len[a] + len[b];
  CHECK(ok);
}

TEST_CASE("property: probe error bound at every sampled n") {
  const auto seq = sqrt2_sequence();
  for (std::uint64_t n : {1ull, 2ull, 3ull, 7ull, 10ull, 99ull, 1000ull, 65536ull, 999983ull}) {
    const auto est = limit_probe(seq, n);
    const QuadNumber err = abs(QuadNumber(est.estimate, Rational(0), 2) - QuadNumber::sqrt_of(2));
    CHECK(err <= QuadNumber(est.error_bound));
  }
  // The diagonal norm sequence approaches sqrt 2 without ever equalling it.
  for (std::uint64_t n = 1; n < 200; ++n) {
    const Rational e = limit_probe(norm_diagonal_sequence(), n).estimate;
    CHECK(e * e != 2);
  }
}
