#pragma once

// Nef envelopes. For an effective exceptional divisor D = sum a_i E_i the
// envelope gamma(D) is the coordinatewise-minimal g with g_i >= a_i such that
// -sum g_i E_i restricts into the nef cone of every prime's surface.
//
// Every condition is a constraint on g:
//   eff[E]          g_E >= a_E
//   nef[E].k        phi_k . x_E(g) >= 0          (polyhedral nef cone of E)
//   nef[E].quad     (x_E(g) . x_E(g)) >= 0       (quadratic nef cone of E)
//   nef[E].ample    (x_E(g) . ample_E) >= 0
// where x_E(g) = restriction of -sum g_i E_i to E. The minimum is found by
// enumerating active sets: every choice of |primes| constraints taken as
// equalities is solved exactly, infeasible points are dropped, and the
// coordinatewise minimum of the rest is returned.

#include <optional>
#include <string>
#include <vector>

#include "mixmult/binary_form.hpp"
#include "mixmult/geomodel.hpp"

namespace mixmult {

struct Constraint {
  enum class Kind { linear, quadratic };

  std::string id;
  Kind kind = Kind::linear;
  QuadVector linear;                       // over g, when kind == linear
  QuadMatrix quadratic;                    // symmetric over g, when kind == quadratic
  std::optional<std::size_t> effectivity;  // g_i >= a_i for this i

  /// Constraint value at g for input coefficients a; feasible iff >= 0.
  QuadNumber value(const QuadVector& g, const QuadVector& a) const;
  /// Whether coordinate i appears in the constraint.
  bool involves(std::size_t i) const;
};

/// All constraints of a model, in a fixed order.
std::vector<Constraint> envelope_constraints(const ThreefoldModel& model);

struct GammaEnvelope {
  ExcDivisor input;
  QuadVector gamma;
  std::vector<std::string> active;  // constraint ids holding with equality
  /// 1-based region along the two primes (only for two-prime models), using
  /// half-open slope intervals [r_k, r_{k+1}) of a_2 / a_1.
  std::optional<int> region;
  /// Active sets whose systems could not be solved in closed form (two
  /// quadratic equalities, or a non-isolated solution); skipped.
  std::size_t skipped_active_sets = 0;
};

/// True iff -D restricts into every prime's nef cone.
bool is_antinef(const ThreefoldModel& model, const ExcDivisor& D);

/// Throws ComputationError: "no minimal envelope" when the minimal feasible
/// points are incomparable, "root outside field" from boundary solving.
GammaEnvelope gamma(const ThreefoldModel& model, const ExcDivisor& D);

/// Slopes 0 < r_1 < ... < r_k where the active set of gamma(n D1 + j D2)
/// changes along j = r n.
std::vector<QuadNumber> regions(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2);

/// A maximal slope interval with one active set, and the envelope there as
/// linear forms in (n, j), certified to satisfy the active equalities
/// identically.
struct EnvelopeRegion {
  QuadNumber lower;                   // 0 for the first region
  std::optional<QuadNumber> upper;    // nullopt = infinity
  std::vector<std::string> active;
  std::vector<BinaryForm> gamma;      // one degree-1 form per prime
};

/// Throws ComputationError("non-polynomial region") when the envelope is not
/// linear in (n, j) on some region.
std::vector<EnvelopeRegion> envelope_regions(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2);

}  // namespace mixmult
