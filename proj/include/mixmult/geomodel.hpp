#pragma once

// A three-dimensional resolution model: exceptional prime divisors E_i, one
// surface lattice per prime, and the restriction classes O(E_j)|_{E_i}. The
// trilinear intersection form is derived from the restrictions:
//
//   (D1 . D2 . D3) = sum_i g3_i * pair_{E_i}(D1|_{E_i}, D2|_{E_i})
//
// and validation checks that every expansion order agrees.

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

#include "mixmult/interspace.hpp"

namespace mixmult {

/// D = sum_i coeffs[i] * E_i, in the model's prime order.
struct ExcDivisor {
  QuadVector coeffs;

  bool is_effective() const;
  bool is_zero() const;
};

ExcDivisor operator+(const ExcDivisor& x, const ExcDivisor& y);
ExcDivisor operator*(const QuadNumber& s, const ExcDivisor& x);

/// One checked identity of the trilinear form.
struct MonomialCheck {
  std::array<std::size_t, 3> monomial;  // prime indices, i <= j <= k
  std::vector<std::string> expansions;  // "on <surface>: <value>"
  bool consistent = true;
};

struct ValidationReport {
  std::vector<MonomialCheck> checks;
  std::vector<std::string> failures;  // human-readable, one per bad monomial

  bool ok() const { return failures.empty(); }
};

class ThreefoldModel {
 public:
  /// restrictions[i][j] is the class of O(E_j)|_{E_i} on surfaces[i].
  /// Does not validate; see validate() and load_model().
  ThreefoldModel(std::int64_t d, std::vector<std::string> primes, std::vector<LatticePtr> surfaces,
                 std::vector<std::vector<QuadVector>> restrictions);

  std::int64_t field() const { return d_; }
  std::size_t prime_count() const { return primes_.size(); }
  const std::vector<std::string>& primes() const { return primes_; }
  const SurfaceLattice& surface(std::size_t i) const { return *surfaces_.at(i); }
  const LatticePtr& surface_ptr(std::size_t i) const { return surfaces_.at(i); }
  const QuadVector& restriction(std::size_t on, std::size_t of) const { return restrictions_.at(on).at(of); }
  std::size_t index_of(const std::string& prime) const;

  ExcDivisor divisor(QuadVector coeffs) const;
  ExcDivisor prime(std::size_t i) const;

  /// D|_{E}: linear in D.
  SurfaceClass restrict(const ExcDivisor& D, std::size_t on) const;
  SurfaceClass restrict(const ExcDivisor& D, const std::string& on) const { return restrict(D, index_of(on)); }

  QuadNumber triple(const ExcDivisor& D1, const ExcDivisor& D2, const ExcDivisor& D3) const;
  /// (E_i . E_j . E_k) expanded on the surface of E_{on}, where `on` is one of i, j, k.
  QuadNumber monomial_on(std::size_t i, std::size_t j, std::size_t k, std::size_t on) const;

  /// Symmetric tensor of (E_i . E_j . E_k), built from the first expansion.
  std::vector<std::vector<QuadVector>> intersection_tensor() const;

 private:
  void check_divisor(const ExcDivisor& D) const;

  std::int64_t d_;
  std::vector<std::string> primes_;
  std::vector<LatticePtr> surfaces_;
  std::vector<std::vector<QuadVector>> restrictions_;
};

ValidationReport validate(const ThreefoldModel& model);

/// The resolution with exceptional primes "Sbar" (over W x W, basis A, B,
/// Delta) and "F" (a ruled surface, basis C0, f) in Q(sqrt 3).
ThreefoldModel builtin_paper_model();

/// Parses and validates a model document. Schema problems raise ParseError,
/// invariant or consistency failures raise ValidationError.
ThreefoldModel load_model(const nlohmann::json& document);
/// Schema checks only; the consistency report is left to validate().
ThreefoldModel parse_model(const nlohmann::json& document);
nlohmann::json read_model_document(const std::string& path);
ThreefoldModel load_model_file(const std::string& path);
/// "paper" selects the builtin model; anything else is a file path.
ThreefoldModel resolve_model(const std::string& name_or_path);

nlohmann::json save_model(const ThreefoldModel& model);

/// num := "p/q" | {"a":"p/q","b":"r/s"} | integer
QuadNumber quad_from_json(const nlohmann::json& j, std::int64_t d);
nlohmann::json quad_to_json(const QuadNumber& x);

bool operator==(const ThreefoldModel& x, const ThreefoldModel& y);

/// "a1,a2,..." of canonical scalars in prime order.
ExcDivisor parse_divisor(const ThreefoldModel& model, const std::string& text);
std::string divisor_string(const ExcDivisor& D);

}  // namespace mixmult
