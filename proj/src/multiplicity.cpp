#include "mixmult/multiplicity.hpp"

#include "mixmult/errors.hpp"

namespace mixmult {

namespace {

ExcDivisor envelope_divisor(const GammaEnvelope& g) { return ExcDivisor{g.gamma}; }

QuadNumber power(const QuadNumber& x, int e) {
  QuadNumber r(1);
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

MultReport limit_single(const ThreefoldModel& model, const ExcDivisor& D) {
  MultReport out;
  out.gamma_used = gamma(model, D);
  const ExcDivisor neg = QuadNumber(-1) * envelope_divisor(out.gamma_used);
  out.limit = -model.triple(neg, neg, neg) / QuadNumber(factorial(kDimension));
  out.multiplicity = QuadNumber(factorial(kDimension)) * out.limit;
  return out;
}

QuadNumber mixed(const ThreefoldModel& model, const std::vector<MixedFactor>& factors) {
  std::vector<ExcDivisor> slots;
  int total = 0;
  for (const auto& f : factors) {
    if (f.exponent < 0) throw ComputationError("mixed: negative exponent");
    total += f.exponent;
  }
  if (total != kDimension) throw ComputationError("mixed: exponents must sum to 3, got " + std::to_string(total));
  for (const auto& f : factors) {
    const ExcDivisor neg = QuadNumber(-1) * envelope_divisor(gamma(model, f.divisor));
    for (int k = 0; k < f.exponent; ++k) slots.push_back(neg);
  }
  return -model.triple(slots[0], slots[1], slots[2]);
}

std::array<QuadNumber, 4> mixed_sequence(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2) {
  const ExcDivisor s1 = QuadNumber(-1) * envelope_divisor(gamma(model, D1));
  const ExcDivisor s2 = QuadNumber(-1) * envelope_divisor(gamma(model, D2));
  std::array<QuadNumber, 4> e;
  e[3] = -model.triple(s1, s1, s1);
  e[2] = -model.triple(s1, s1, s2);
  e[1] = -model.triple(s1, s2, s2);
  e[0] = -model.triple(s2, s2, s2);
  return e;
}

PiecewisePoly::PiecewisePoly(std::vector<PiecewiseRegion> regions) : regions_(std::move(regions)) {
  if (regions_.empty()) throw ComputationError("piecewise polynomial without regions");
  if (sign(regions_.front().lower) != 0) throw ComputationError("piecewise regions must start at slope 0");
  if (regions_.back().upper) throw ComputationError("piecewise regions must end at slope infinity");
  for (std::size_t k = 0; k < regions_.size(); ++k) {
    if (regions_[k].poly.degree() != kDimension) throw ComputationError("piecewise region polynomial is not cubic");
    if (k + 1 == regions_.size()) break;
    const auto& here = regions_[k];
    const auto& next = regions_[k + 1];
    if (!here.upper || !(*here.upper == next.lower) || !(here.lower < *here.upper)) {
      throw ComputationError("piecewise slopes do not tile [0, inf)");
    }
    // Continuity: the difference vanishes on the shared ray j = r n.
    if (!(here.poly - next.poly).on_ray(*here.upper).is_zero()) {
      throw ComputationError("piecewise polynomial is discontinuous at slope " + canonical_string(*here.upper));
    }
  }
}

std::size_t PiecewisePoly::locate(const QuadNumber& n, const QuadNumber& j) const {
  if (sign(n) < 0 || sign(j) < 0 || (n.is_zero() && j.is_zero())) {
    throw ComputationError("piecewise evaluation needs n, j >= 0, not both zero");
  }
  std::size_t k = 0;
  while (k + 1 < regions_.size() && (n.is_zero() || j >= *regions_[k].upper * n)) ++k;
  return k;
}

QuadNumber PiecewisePoly::value(const QuadNumber& n, const QuadNumber& j) const {
  return regions_[locate(n, j)].poly.evaluate(n, j);
}

PiecewisePoly PiecewisePoly::scaled(const QuadNumber& s) const {
  auto copy = regions_;
  for (auto& r : copy) r.poly = s * r.poly;
  return PiecewisePoly(std::move(copy));
}

PiecewisePoly piecewise_limit(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2) {
  const auto tensor = model.intersection_tensor();
  const std::size_t n = model.prime_count();
  std::vector<PiecewiseRegion> out;
  for (auto& region : envelope_regions(model, D1, D2)) {
    // -((-g)^3)/3! = (g^3)/3! with g the envelope's linear forms.
    BinaryForm cubic = BinaryForm::zero(kDimension);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (tensor[i][j][k].is_zero()) continue;
          cubic += tensor[i][j][k] * (region.gamma[i] * region.gamma[j] * region.gamma[k]);
        }
    cubic = (QuadNumber(1) / QuadNumber(factorial(kDimension))) * cubic;
    out.push_back({region.lower, region.upper, std::move(cubic), std::move(region.active)});
  }
  return PiecewisePoly(std::move(out));
}

BinaryForm product_limit(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2) {
  const auto e = mixed_sequence(model, D1, D2);
  std::vector<QuadNumber> coeffs(kDimension + 1);
  // coeff index k is the power of j, so the power of n is 3 - k.
  for (int k = 0; k <= kDimension; ++k) {
    coeffs[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(kDimension - k)] /
                                          QuadNumber(factorial(kDimension - k) * factorial(k));
  }
  return BinaryForm(std::move(coeffs));
}

RationalBounds cube_root_bounds(const Rational& qlo, const Rational& qhi, unsigned digits) {
  if (sgn(qlo) < 0) throw ComputationError("cube root of a negative enclosure");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const Integer scale3 = scale * scale * scale;

  Integer lo_scaled, hi_scaled, r;
  const Rational lo_q = qlo * scale3;
  const Rational hi_q = qhi * scale3;
  mpz_fdiv_q(lo_scaled.get_mpz_t(), lo_q.get_num_mpz_t(), lo_q.get_den_mpz_t());
  mpz_cdiv_q(hi_scaled.get_mpz_t(), hi_q.get_num_mpz_t(), hi_q.get_den_mpz_t());

  RationalBounds out;
  mpz_root(r.get_mpz_t(), lo_scaled.get_mpz_t(), 3);  // floor
  out.lo = Rational(r, scale);
  if (mpz_root(r.get_mpz_t(), hi_scaled.get_mpz_t(), 3) == 0) r += 1;  // ceil
  out.hi = Rational(r, scale);
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

CubeRootDecision decide_cube_root_sum(const QuadNumber& x, const QuadNumber& y, const QuadNumber& z,
                                      unsigned max_digits) {
  if (sign(x) < 0 || sign(y) < 0 || sign(z) < 0) throw ComputationError("cube roots of negative multiplicities");
  CubeRootDecision out;
  // a = b + c  <=>  (x - y - z)^3 = 27xyz for a, b, c >= 0.
  const QuadNumber excess = x - y - z;
  if (sign(excess) >= 0 && excess * excess * excess == QuadNumber(27) * x * y * z) {
    out.holds = true;
    out.equality = true;
    return out;
  }
  for (unsigned digits = 8; digits <= max_digits; digits *= 2) {
    const auto ex = enclose(x, digits + 2);
    const auto ey = enclose(y, digits + 2);
    const auto ez = enclose(z, digits + 2);
    const auto a = cube_root_bounds(ex.lo, ex.hi, digits);
    const auto b = cube_root_bounds(ey.lo, ey.hi, digits);
    const auto c = cube_root_bounds(ez.lo, ez.hi, digits);
    out.digits = digits;
    if (a.hi <= b.lo + c.lo) {
      out.holds = true;
      return out;
    }
    if (a.lo > b.hi + c.hi) {
      out.holds = false;
      return out;
    }
  }
  throw ComputationError("undecidable at max precision (" + std::to_string(max_digits) + " digits)");
}

bool MinkowskiReport::all_hold() const {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

namespace {

std::string e_symbol(int i) {
  return "e(I1^[" + std::to_string(i) + "],I2^[" + std::to_string(kDimension - i) + "])";
}

InequalityCheck exact_check(std::string label, std::string statement, const QuadNumber& lhs, const QuadNumber& rhs) {
  InequalityCheck c;
  c.label = std::move(label);
  c.statement = std::move(statement);
  c.lhs = canonical_string(lhs);
  c.rhs = canonical_string(rhs);
  c.holds = lhs <= rhs;
  c.equality = lhs == rhs;
  c.method = "exact";
  return c;
}

}  // namespace

MinkowskiReport minkowski_check(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2) {
  MinkowskiReport report;
  report.e = mixed_sequence(model, D1, D2);
  const auto& e = report.e;
  const int d = kDimension;

  // 1) e_i^2 <= e_{i+1} e_{i-1}
  for (int i = 1; i <= d - 1; ++i) {
    report.checks.push_back(exact_check("1) i=" + std::to_string(i),
                                        e_symbol(i) + "^2 <= " + e_symbol(i + 1) + "*" + e_symbol(i - 1),
                                        power(e[i], 2), e[i + 1] * e[i - 1]));
  }
  // 2) e_i e_{d-i} <= e_d e_0
  for (int i = 0; i <= d; ++i) {
    report.checks.push_back(exact_check("2) i=" + std::to_string(i),
                                        e_symbol(i) + "*" + e_symbol(d - i) + " <= " + e_symbol(d) + "*" + e_symbol(0),
                                        e[i] * e[d - i], e[d] * e[0]));
  }
  // 3) e_{d-i}^d <= e_d^{d-i} e_0^i
  for (int i = 0; i <= d; ++i) {
    report.checks.push_back(exact_check("3) i=" + std::to_string(i),
                                        e_symbol(d - i) + "^3 <= " + e_symbol(d) + "^" + std::to_string(d - i) + "*" +
                                            e_symbol(0) + "^" + std::to_string(i),
                                        power(e[d - i], d), power(e[d], d - i) * power(e[0], i)));
  }
  // 4) e(I1 I2)^(1/3) <= e(I1)^(1/3) + e(I2)^(1/3), with e(I1 I2) = 3! * product_limit(1, 1).
  report.e_product = QuadNumber(6) * product_limit(model, D1, D2).evaluate(QuadNumber(1), QuadNumber(1));
  const auto decision = decide_cube_root_sum(report.e_product, e[d], e[0]);
  InequalityCheck c4;
  c4.label = "4)";
  c4.statement = "e(I1*I2)^(1/3) <= " + e_symbol(d) + "^(1/3) + " + e_symbol(0) + "^(1/3)";
  c4.lhs = "(" + canonical_string(report.e_product) + ")^(1/3)";
  c4.rhs = "(" + canonical_string(e[d]) + ")^(1/3) + (" + canonical_string(e[0]) + ")^(1/3)";
  c4.holds = decision.holds;
  c4.equality = decision.equality;
  c4.method = decision.equality ? "exact" : "interval(" + std::to_string(decision.digits) + ")";
  report.checks.push_back(std::move(c4));
  return report;
}

}  // namespace mixmult
