#pragma once

// Divisor classes on a surface: a named basis, the intersection (Gram)
// pairing, and closed nef / effective cones.

#include <memory>
#include <string>
#include <vector>

#include "mixmult/qfield.hpp"

namespace mixmult {

using QuadMatrix = std::vector<QuadVector>;

/// Closed convex cone in a lattice's coordinate space.
///
/// polyhedral: every inequality vector phi satisfies phi . x >= 0.
/// quadratic:  (x.x) >= 0 under the Gram pairing and (x.ample) >= 0, i.e. the
///             component of the positive cone containing the ample class.
struct ConeSpec {
  enum class Kind { polyhedral, quadratic };

  Kind kind = Kind::polyhedral;
  std::vector<QuadVector> inequalities;

  static ConeSpec quadratic() { return {Kind::quadratic, {}}; }
  static ConeSpec polyhedral(std::vector<QuadVector> inequalities) {
    return {Kind::polyhedral, std::move(inequalities)};
  }
};

class SurfaceLattice {
 public:
  /// Validates: unique labels, square symmetric gram, cone shapes, ample class
  /// strictly inside the nef cone. Throws ValidationError.
  SurfaceLattice(std::string name, std::vector<std::string> basis, QuadMatrix gram, QuadVector ample, ConeSpec nef,
                 ConeSpec eff, std::int64_t d);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  const QuadMatrix& gram() const { return gram_; }
  const QuadVector& ample() const { return ample_; }
  const ConeSpec& nef() const { return nef_; }
  const ConeSpec& eff() const { return eff_; }
  std::int64_t field() const { return d_; }

  /// Bilinear extension of the Gram matrix to coordinate vectors.
  QuadNumber pair(const QuadVector& x, const QuadVector& y) const;
  /// Coordinate vector of the i-th basis label.
  QuadVector unit(std::size_t i) const;
  std::size_t index_of(const std::string& label) const;

 private:
  std::string name_;
  std::vector<std::string> basis_;
  QuadMatrix gram_;
  QuadVector ample_;
  ConeSpec nef_;
  ConeSpec eff_;
  std::int64_t d_;
};

using LatticePtr = std::shared_ptr<const SurfaceLattice>;

struct SurfaceClass {
  LatticePtr lattice;
  QuadVector coords;

  SurfaceClass(LatticePtr l, QuadVector c);
};

SurfaceClass operator+(const SurfaceClass& x, const SurfaceClass& y);
SurfaceClass operator-(const SurfaceClass& x, const SurfaceClass& y);
SurfaceClass operator*(const QuadNumber& s, const SurfaceClass& x);

/// Intersection number; throws ComputationError on lattice mismatch.
QuadNumber pair(const SurfaceClass& x, const SurfaceClass& y);

/// Membership in the closed cone; boundary counts as inside.
bool cone_contains(const SurfaceLattice& lattice, const ConeSpec& cone, const QuadVector& x);
bool cone_contains(const ConeSpec& cone, const SurfaceClass& x);

/// Parameters t >= 0 at which base + t*dir changes membership in the cone,
/// in increasing order. Quadratic cones solve (x.x) = 0 in the field; a root
/// outside Q(sqrt d) throws ComputationError("discriminant outside field").
std::vector<QuadNumber> boundary_slopes(const ConeSpec& cone, const SurfaceClass& base, const SurfaceClass& dir);

QuadNumber dot(const QuadVector& x, const QuadVector& y);

/// Roots of alpha t^2 + beta t + gamma = 0 in the field, ascending, deduplicated.
/// A polynomial that vanishes identically is reported through `identically_zero`.
std::vector<QuadNumber> solve_quadratic(const QuadNumber& alpha, const QuadNumber& beta, const QuadNumber& gamma,
                                        std::int64_t d, bool* identically_zero = nullptr);

}  // namespace mixmult
