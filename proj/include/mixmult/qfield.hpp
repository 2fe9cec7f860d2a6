#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt(d)).
//
// A QuadNumber is a + b*sqrt(d) with a, b rational (GMP, always canonical)
// and d a squarefree integer >= 2. Every value carries its d; combining two
// values with different d throws. The one exception is a default-constructed
// or rational-only value, which has d == 0 ("unbound") and adopts the field
// of whatever it is combined with.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixmult {

using Integer = mpz_class;
using Rational = mpq_class;

class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  QuadNumber(Rational a, Rational b, std::int64_t d);

  static QuadNumber rational(Rational a, std::int64_t d) { return {std::move(a), Rational(0), d}; }
  static QuadNumber sqrt_of(std::int64_t d) { return {Rational(0), Rational(1), d}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  /// 0 when unbound (a rational that has not met an irrational yet).
  std::int64_t d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Same value, bound to field d. Throws if already bound elsewhere.
  QuadNumber in_field(std::int64_t d) const;

  QuadNumber conjugate() const;
  /// a^2 - d b^2.
  Rational norm() const;

  QuadNumber operator-() const;
  QuadNumber& operator+=(const QuadNumber& y);
  QuadNumber& operator-=(const QuadNumber& y);
  QuadNumber& operator*=(const QuadNumber& y);
  QuadNumber& operator/=(const QuadNumber& y);

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }

  /// Canonical-form equality; throws on mismatched bound fields.
  friend bool operator==(const QuadNumber& x, const QuadNumber& y);
  /// Exact real ordering.
  friend std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y);

 private:
  Rational a_{0};
  Rational b_{0};
  std::int64_t d_ = 0;
};

/// Field shared by x and y (0 if both unbound); throws on mismatch.
std::int64_t common_field(const QuadNumber& x, const QuadNumber& y);

/// Exact sign of a + b sqrt(d).
int sign(const QuadNumber& x);
QuadNumber abs(const QuadNumber& x);

/// Smallest integer k with k >= x.
Integer ceil(const QuadNumber& x);
/// Largest integer k with k <= x.
Integer floor(const QuadNumber& x);

/// Rational enclosure lo <= x <= hi with hi - lo <= |b| * 10^-digits.
struct RationalBounds {
  Rational lo;
  Rational hi;
};
RationalBounds enclose(const QuadNumber& x, unsigned digits);

/// x >= 0 with x^2 == q, when q is a rational square or d times one.
std::optional<QuadNumber> sqrt_in_field(const Rational& q, std::int64_t d);
/// Square root of a nonnegative field element inside Q(sqrt(d)), if it exists.
std::optional<QuadNumber> field_sqrt(const QuadNumber& x, std::int64_t d);

/// "p/q + r/s*sqrt(d)" with zero parts omitted.
std::string canonical_string(const QuadNumber& x);
/// Inverse of canonical_string. Also accepts "sqrt(d)" with an implicit
/// coefficient and plain integers. A sqrt(e) with e != d is a ParseError.
QuadNumber parse_quad(std::string_view text, std::int64_t d);
/// "p/q" or "p".
Rational parse_rational(std::string_view text);
std::string rational_string(const Rational& q);

std::ostream& operator<<(std::ostream& os, const QuadNumber& x);

using QuadVector = std::vector<QuadNumber>;

bool is_squarefree(std::int64_t d);

}  // namespace mixmult
