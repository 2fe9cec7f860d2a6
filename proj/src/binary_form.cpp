#include "mixmult/binary_form.hpp"

#include <algorithm>

#include "mixmult/errors.hpp"

namespace mixmult {

BinaryForm::BinaryForm(std::vector<QuadNumber> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ComputationError("binary form needs at least one coefficient");
}

BinaryForm BinaryForm::zero(int degree) { return BinaryForm(std::vector<QuadNumber>(static_cast<std::size_t>(degree) + 1)); }

BinaryForm BinaryForm::linear(QuadNumber c_n, QuadNumber c_j) { return BinaryForm({std::move(c_n), std::move(c_j)}); }

BinaryForm BinaryForm::constant(QuadNumber c) { return BinaryForm({std::move(c)}); }

const QuadNumber& BinaryForm::monomial(int dn, int dj) const {
  if (dn < 0 || dj < 0 || dn + dj != degree()) throw ComputationError("monomial degree does not match form degree");
  return coeff(dj);
}

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QuadNumber& c) { return c.is_zero(); });
}

QuadNumber BinaryForm::evaluate(const QuadNumber& n, const QuadNumber& j) const {
  QuadNumber sum;
  for (int k = 0; k <= degree(); ++k) {
    QuadNumber term = coeff(k);
    for (int e = 0; e < degree() - k; ++e) term *= n;
    for (int e = 0; e < k; ++e) term *= j;
    sum += term;
  }
  return sum;
}

QuadNumber BinaryForm::on_ray(const QuadNumber& r) const {
  // Horner in r from the highest j-power down.
  QuadNumber acc;
  for (int k = degree(); k >= 0; --k) acc = acc * r + coeff(k);
  return acc;
}

BinaryForm& BinaryForm::operator+=(const BinaryForm& y) {
  if (y.degree() != degree()) throw ComputationError("adding binary forms of different degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += y.coeffs_[k];
  return *this;
}

BinaryForm& BinaryForm::operator-=(const BinaryForm& y) {
  if (y.degree() != degree()) throw ComputationError("subtracting binary forms of different degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= y.coeffs_[k];
  return *this;
}

BinaryForm operator*(const BinaryForm& x, const BinaryForm& y) {
  std::vector<QuadNumber> out(x.coeffs_.size() + y.coeffs_.size() - 1);
  for (std::size_t a = 0; a < x.coeffs_.size(); ++a) {
    if (x.coeffs_[a].is_zero()) continue;
    for (std::size_t b = 0; b < y.coeffs_.size(); ++b) out[a + b] += x.coeffs_[a] * y.coeffs_[b];
  }
  return BinaryForm(std::move(out));
}

BinaryForm operator*(const QuadNumber& s, BinaryForm x) {
  for (auto& c : x.coeffs_) c *= s;
  return x;
}

bool operator==(const BinaryForm& x, const BinaryForm& y) {
  if (x.degree() != y.degree()) return false;
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) {
    if (!(x.coeffs_[k] == y.coeffs_[k])) return false;
  }
  return true;
}

namespace {

std::string power(const char* var, int e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return std::string(var) + "^" + std::to_string(e);
}

}  // namespace

std::string BinaryForm::to_string() const {
  std::string out;
  for (int k = 0; k <= degree(); ++k) {
    const QuadNumber& c = coeff(k);
    if (c.is_zero()) continue;
    std::string vars = power("n", degree() - k);
    const std::string jp = power("j", k);
    if (!jp.empty()) vars += (vars.empty() ? "" : "*") + jp;

    std::string body;
    bool negative = false;
    if (c.is_rational()) {
      negative = sgn(c.a()) < 0;
      const Rational mag = negative ? Rational(-c.a()) : c.a();
      if (vars.empty() || mag != 1) body = rational_string(mag);
    } else {
      body = "(" + canonical_string(c) + ")";
    }
    if (!vars.empty()) body += (body.empty() ? "" : "*") + vars;

    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace mixmult
