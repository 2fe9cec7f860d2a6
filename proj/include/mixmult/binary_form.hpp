#pragma once

#include <string>
#include <vector>

#include "mixmult/qfield.hpp"

namespace mixmult {

/// Homogeneous polynomial in (n, j) over Q(sqrt d):
///   sum_k coeff(k) * n^(deg-k) * j^k
class BinaryForm {
 public:
  static BinaryForm zero(int degree);
  /// c_n * n + c_j * j
  static BinaryForm linear(QuadNumber c_n, QuadNumber c_j);
  static BinaryForm constant(QuadNumber c);

  explicit BinaryForm(std::vector<QuadNumber> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const QuadNumber& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  /// Coefficient of n^dn * j^dj; requires dn + dj == degree().
  const QuadNumber& monomial(int dn, int dj) const;
  const std::vector<QuadNumber>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  QuadNumber evaluate(const QuadNumber& n, const QuadNumber& j) const;
  /// Value at (1, r), i.e. the polynomial in n left after substituting j = r n,
  /// divided by n^deg.
  QuadNumber on_ray(const QuadNumber& r) const;

  BinaryForm& operator+=(const BinaryForm& y);
  BinaryForm& operator-=(const BinaryForm& y);
  friend BinaryForm operator+(BinaryForm x, const BinaryForm& y) { return x += y; }
  friend BinaryForm operator-(BinaryForm x, const BinaryForm& y) { return x -= y; }
  friend BinaryForm operator*(const BinaryForm& x, const BinaryForm& y);
  friend BinaryForm operator*(const QuadNumber& s, BinaryForm x);
  friend bool operator==(const BinaryForm& x, const BinaryForm& y);

  /// "78*n^3 - 81*n^2*j + 27*n*j^2 + 9*j^3"; irrational coefficients in parentheses.
  std::string to_string() const;

 private:
  std::vector<QuadNumber> coeffs_;
};

}  // namespace mixmult
