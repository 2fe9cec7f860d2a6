#include "mixmult/interspace.hpp"

#include <algorithm>
#include <set>

#include "mixmult/errors.hpp"

namespace mixmult {

QuadNumber dot(const QuadVector& x, const QuadVector& y) {
  if (x.size() != y.size()) throw ComputationError("dimension mismatch in dot product");
  QuadNumber s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

SurfaceLattice::SurfaceLattice(std::string name, std::vector<std::string> basis, QuadMatrix gram, QuadVector ample,
                               ConeSpec nef, ConeSpec eff, std::int64_t d)
    : name_(std::move(name)),
      basis_(std::move(basis)),
      gram_(std::move(gram)),
      ample_(std::move(ample)),
      nef_(std::move(nef)),
      eff_(std::move(eff)),
      d_(d) {
  const std::size_t n = basis_.size();
  const std::string where = "surface " + name_ + ": ";
  if (n == 0) throw ValidationError(where + "empty basis");
  if (std::set<std::string>(basis_.begin(), basis_.end()).size() != n) {
    throw ValidationError(where + "basis labels not unique");
  }
  if (gram_.size() != n) throw ValidationError(where + "gram has wrong size");
  for (auto& row : gram_) {
    if (row.size() != n) throw ValidationError(where + "gram is not square");
    for (auto& v : row) v = v.in_field(d_);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(gram_[i][j] == gram_[j][i])) throw ValidationError(where + "gram not symmetric");
    }
  }
  if (ample_.size() != n) throw ValidationError(where + "ample class has wrong length");
  for (auto& v : ample_) v = v.in_field(d_);
  for (ConeSpec* cone : {&nef_, &eff_}) {
    if (cone->kind == ConeSpec::Kind::polyhedral) {
      if (cone->inequalities.empty()) throw ValidationError(where + "polyhedral cone needs at least one inequality");
      for (auto& phi : cone->inequalities) {
        if (phi.size() != n) throw ValidationError(where + "cone inequality has wrong length");
        for (auto& v : phi) v = v.in_field(d_);
      }
    }
  }
  // The ample class must sit strictly inside the nef cone.
  if (nef_.kind == ConeSpec::Kind::quadratic) {
    if (sign(pair(ample_, ample_)) <= 0) throw ValidationError(where + "ample class has nonpositive self-intersection");
  } else {
    for (const auto& phi : nef_.inequalities) {
      if (sign(dot(phi, ample_)) <= 0) throw ValidationError(where + "ample class not strictly inside nef cone");
    }
  }
  if (!cone_contains(*this, eff_, ample_)) throw ValidationError(where + "ample class not in effective cone");
}

QuadNumber SurfaceLattice::pair(const QuadVector& x, const QuadVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw ComputationError("class length does not match lattice " + name_);
  QuadNumber s;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_[i][j] * y[j];
  }
  return s.in_field(d_);
}

QuadVector SurfaceLattice::unit(std::size_t i) const {
  QuadVector v(rank(), QuadNumber::rational(0, d_));
  v.at(i) = QuadNumber::rational(1, d_);
  return v;
}

std::size_t SurfaceLattice::index_of(const std::string& label) const {
  const auto it = std::find(basis_.begin(), basis_.end(), label);
  if (it == basis_.end()) throw ComputationError("unknown basis label '" + label + "' in surface " + name_);
  return static_cast<std::size_t>(it - basis_.begin());
}

SurfaceClass::SurfaceClass(LatticePtr l, QuadVector c) : lattice(std::move(l)), coords(std::move(c)) {
  if (!lattice) throw ComputationError("surface class without lattice");
  if (coords.size() != lattice->rank()) throw ComputationError("class length does not match lattice " + lattice->name());
}

namespace {

void require_same(const SurfaceClass& x, const SurfaceClass& y) {
  if (x.lattice != y.lattice) {
    throw ComputationError("lattice mismatch: " + x.lattice->name() + " vs " + y.lattice->name());
  }
}

}  // namespace

SurfaceClass operator+(const SurfaceClass& x, const SurfaceClass& y) {
  require_same(x, y);
  QuadVector c = x.coords;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coords[i];
  return {x.lattice, c};
}

SurfaceClass operator-(const SurfaceClass& x, const SurfaceClass& y) { return x + QuadNumber(-1) * y; }

SurfaceClass operator*(const QuadNumber& s, const SurfaceClass& x) {
  QuadVector c = x.coords;
  for (auto& v : c) v *= s;
  return {x.lattice, c};
}

QuadNumber pair(const SurfaceClass& x, const SurfaceClass& y) {
  require_same(x, y);
  return x.lattice->pair(x.coords, y.coords);
}

bool cone_contains(const SurfaceLattice& lattice, const ConeSpec& cone, const QuadVector& x) {
  if (cone.kind == ConeSpec::Kind::quadratic) {
    return sign(lattice.pair(x, x)) >= 0 && sign(lattice.pair(x, lattice.ample())) >= 0;
  }
  return std::all_of(cone.inequalities.begin(), cone.inequalities.end(),
                     [&](const QuadVector& phi) { return sign(dot(phi, x)) >= 0; });
}

bool cone_contains(const ConeSpec& cone, const SurfaceClass& x) { return cone_contains(*x.lattice, cone, x.coords); }

std::vector<QuadNumber> solve_quadratic(const QuadNumber& alpha, const QuadNumber& beta, const QuadNumber& gamma,
                                        std::int64_t d, bool* identically_zero) {
  if (identically_zero) *identically_zero = false;
  if (alpha.is_zero()) {
    if (beta.is_zero()) {
      if (gamma.is_zero() && identically_zero) *identically_zero = true;
      return {};
    }
    return {(-gamma / beta).in_field(d)};
  }
  const QuadNumber disc = beta * beta - QuadNumber(4) * alpha * gamma;
  if (sign(disc) < 0) return {};
  const auto root = field_sqrt(disc, d);
  if (!root) {
    throw ComputationError("discriminant outside field: sqrt(" + canonical_string(disc) + ") is not in Q(sqrt(" +
                           std::to_string(d) + "))");
  }
  QuadNumber t1 = ((-beta - *root) / (QuadNumber(2) * alpha)).in_field(d);
  QuadNumber t2 = ((-beta + *root) / (QuadNumber(2) * alpha)).in_field(d);
  if (t2 < t1) std::swap(t1, t2);
  if (t1 == t2) return {t1};
  return {t1, t2};
}

std::vector<QuadNumber> boundary_slopes(const ConeSpec& cone, const SurfaceClass& base, const SurfaceClass& dir) {
  require_same(base, dir);
  const SurfaceLattice& lat = *base.lattice;
  const std::int64_t d = lat.field();
  if (std::all_of(dir.coords.begin(), dir.coords.end(), [](const QuadNumber& v) { return v.is_zero(); })) {
    throw ComputationError("boundary_slopes: direction is zero");
  }

  // Every boundary hypersurface contributes its roots as candidates.
  std::vector<QuadNumber> candidates;
  auto add_linear = [&](const QuadNumber& at_base, const QuadNumber& along) {
    if (!along.is_zero()) candidates.push_back((-at_base / along).in_field(d));
  };
  if (cone.kind == ConeSpec::Kind::quadratic) {
    const auto roots = solve_quadratic(lat.pair(dir.coords, dir.coords), QuadNumber(2) * lat.pair(base.coords, dir.coords),
                                       lat.pair(base.coords, base.coords), d);
    candidates.insert(candidates.end(), roots.begin(), roots.end());
    add_linear(lat.pair(base.coords, lat.ample()), lat.pair(dir.coords, lat.ample()));
  } else {
    for (const auto& phi : cone.inequalities) add_linear(dot(phi, base.coords), dot(phi, dir.coords));
  }
  std::erase_if(candidates, [](const QuadNumber& t) { return sign(t) < 0; });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto inside = [&](const QuadNumber& t) { return cone_contains(cone, base + t * dir); };
  std::vector<QuadNumber> crossings;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const QuadNumber& t = candidates[k];
    const QuadNumber right = k + 1 < candidates.size() ? (t + candidates[k + 1]) / QuadNumber(2) : t + QuadNumber(1);
    const bool before = sign(t) == 0 ? inside(t) : inside(k > 0 ? (t + candidates[k - 1]) / QuadNumber(2) : t / QuadNumber(2));
    if (before != inside(right)) crossings.push_back(t);
  }
  return crossings;
}

}  // namespace mixmult
