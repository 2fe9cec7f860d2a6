#pragma once

// Multiplicities of divisorial filtrations on a fixed three-dimensional model.
//
// With sigma(D) = sum gamma_i(D) E_i the envelope of D, the anti-positive
// product <(-D1)^{d1} . ... > is the ordinary product of the -sigma(D_i), so
//
//   lim l(R/I(mD)) / m^3     = -((-sigma(D))^3) / 3!
//   e(I(D1)^[d1], ...)       = -((-sigma(D1))^{d1} . ...)
//   lim l(R/I(mnD1) I(mjD2)) / m^3 = sum_{i1+i2=3} e(I(D1)^[i1], I(D2)^[i2]) n^i1 j^i2 / (i1! i2!)

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/binary_form.hpp"
#include "mixmult/envelope.hpp"

namespace mixmult {

constexpr int kDimension = 3;

struct MultReport {
  QuadNumber limit;         // lim l(R/I(mD)) / m^3
  QuadNumber multiplicity;  // 3! * limit
  GammaEnvelope gamma_used;
};

MultReport limit_single(const ThreefoldModel& model, const ExcDivisor& D);

struct MixedFactor {
  ExcDivisor divisor;
  int exponent = 0;
};

/// Mixed multiplicity; exponents must be >= 0 and sum to 3.
QuadNumber mixed(const ThreefoldModel& model, const std::vector<MixedFactor>& factors);

/// e[i] = e(I(D1)^[i], I(D2)^[3-i]) for i = 0..3.
std::array<QuadNumber, 4> mixed_sequence(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2);

struct PiecewiseRegion {
  QuadNumber lower;
  std::optional<QuadNumber> upper;  // nullopt = infinity
  BinaryForm poly;                  // homogeneous cubic in (n, j)
  std::vector<std::string> active;
};

/// Homogeneous cubics on closed slope cones j/n in [lower, upper] tiling
/// [0, inf]. Construction checks the tiling and continuity across every
/// shared ray.
class PiecewisePoly {
 public:
  explicit PiecewisePoly(std::vector<PiecewiseRegion> regions);

  const std::vector<PiecewiseRegion>& regions() const { return regions_; }
  /// Region index (0-based) for the point (n, j), n, j >= 0 not both zero;
  /// boundary rays belong to the upper region.
  std::size_t locate(const QuadNumber& n, const QuadNumber& j) const;
  QuadNumber value(const QuadNumber& n, const QuadNumber& j) const;
  /// Every polynomial multiplied by s.
  PiecewisePoly scaled(const QuadNumber& s) const;

 private:
  std::vector<PiecewiseRegion> regions_;
};

/// lim l(R/I(m(n D1 + j D2))) / m^3 as a piecewise cubic in (n, j).
PiecewisePoly piecewise_limit(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2);

/// lim l(R/I(mn D1) I(mj D2)) / m^3, a single cubic.
BinaryForm product_limit(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2);

struct InequalityCheck {
  std::string label;      // e.g. "1) i=1"
  std::string statement;  // the inequality with mixed-multiplicity symbols
  std::string lhs;
  std::string rhs;
  bool holds = false;
  bool equality = false;
  std::string method;     // "exact" or "interval(<digits>)"
};

struct MinkowskiReport {
  std::array<QuadNumber, 4> e;  // e[i] = e(I(1)^[i], I(2)^[3-i])
  QuadNumber e_product;         // e(I(1) I(2))
  std::vector<InequalityCheck> checks;

  bool all_hold() const;
};

/// Inequalities 1)-3) exactly in the field; 4) by certified rational interval
/// enclosures of cube roots (exact equality is detected algebraically first).
/// Throws ComputationError("undecidable at max precision") past 128 digits.
MinkowskiReport minkowski_check(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2);

/// Decides x^(1/3) <= y^(1/3) + z^(1/3) for x, y, z >= 0 by interval
/// refinement. Returns the digits used; `equality` set when exact.
struct CubeRootDecision {
  bool holds = false;
  bool equality = false;
  unsigned digits = 0;
};
CubeRootDecision decide_cube_root_sum(const QuadNumber& x, const QuadNumber& y, const QuadNumber& z,
                                      unsigned max_digits = 128);

/// Rational bounds lo <= q^(1/3) <= hi for a rational interval [qlo, qhi], qlo >= 0.
RationalBounds cube_root_bounds(const Rational& qlo, const Rational& qhi, unsigned digits);

}  // namespace mixmult
