#include "doctest.h"
#include "mixmult/errors.hpp"
#include "mixmult/multiplicity.hpp"
#include "support.hpp"

using namespace mixmult;
using testsupport::q;
using testsupport::uniform;

namespace {

const ThreefoldModel& model() {
  static const ThreefoldModel m = builtin_paper_model();
  return m;
}

ExcDivisor D(const QuadNumber& n, const QuadNumber& j) { return model().divisor({n, j}); }

BinaryForm cubic(const char* a, const char* b, const char* c, const char* d) {
  return BinaryForm({q(a), q(b), q(c), q(d)});
}

// x^(1/3) <= y^(1/3) + z^(1/3) for x, y, z >= 0, decided exactly: with
// u + v - w = p + q + r, p^3 + q^3 + r^3 - 3pqr = (p+q+r) * (sum of squares)/2,
// so the inequality is equivalent to x - y - z <= 3 (xyz)^(1/3).
bool cube_root_oracle(const QuadNumber& x, const QuadNumber& y, const QuadNumber& z) {
  const QuadNumber s = x - y - z;
  if (sign(s) <= 0) return true;
  return s * s * s <= QuadNumber(27) * x * y * z;
}

}  // namespace

TEST_CASE("limit_single") {
  auto r = limit_single(model(), D(1, 0));
  CHECK(r.limit == QuadNumber(33));
  CHECK(r.multiplicity == QuadNumber(198));
  r = limit_single(model(), D(1, 1));
  CHECK(r.limit == QuadNumber(33));
  r = limit_single(model(), D(0, 1));
  CHECK(r.limit == q("2007/169 - 9/338*sqrt(3)"));
  CHECK(r.multiplicity == q("12042/169 - 27/169*sqrt(3)"));
  CHECK(r.gamma_used.region == 3);
}

TEST_CASE("mixed") {
  const ExcDivisor S = model().prime(0), F = model().prime(1);
  CHECK(mixed(model(), {{S, 3}}) == QuadNumber(198));
  CHECK(mixed(model(), {{S, 2}, {F, 1}}) == q("891/13 + 99/13*sqrt(3)"));
  CHECK(mixed(model(), {{S, 1}, {F, 2}}) == q("12042/169 - 27/169*sqrt(3)"));
  CHECK(mixed(model(), {{F, 1}, {S, 2}}) == mixed(model(), {{S, 2}, {F, 1}}));
  CHECK(mixed(model(), {{S, 1}, {F, 1}, {D(1, 1), 1}}) == mixed(model(), {{D(1, 1), 1}, {F, 1}, {S, 1}}));
  CHECK_THROWS_AS(mixed(model(), {{S, 2}, {F, 2}}), ComputationError);
  CHECK_THROWS_AS(mixed(model(), {{S, -1}, {F, 4}}), ComputationError);
}

TEST_CASE("piecewise_limit") {
  const auto pw = piecewise_limit(model(), model().prime(0), model().prime(1));
  REQUIRE(pw.regions().size() == 3);
  CHECK(pw.regions()[0].lower == QuadNumber(0));
  CHECK(pw.regions()[0].poly == cubic("33", "0", "0", "0"));
  CHECK(pw.regions()[1].lower == QuadNumber(1));
  CHECK(pw.regions()[1].poly == cubic("78", "-81", "27", "9"));
  CHECK(pw.regions()[2].lower == q("3 - 1/3*sqrt(3)"));
  CHECK(pw.regions()[2].poly == cubic("0", "0", "0", "2007/169 - 9/338*sqrt(3)"));
  CHECK_FALSE(pw.regions()[2].upper);
  const auto e = pw.scaled(QuadNumber(6));
  CHECK(e.regions()[1].poly == cubic("468", "-486", "162", "54"));
  CHECK(pw.regions()[1].poly.to_string() == "78*n^3 - 81*n^2*j + 27*n*j^2 + 9*j^3");
  CHECK(pw.locate(QuadNumber(1), QuadNumber(1)) == 1);
  CHECK(pw.locate(QuadNumber(0), QuadNumber(1)) == 2);
}

TEST_CASE("PiecewisePoly rejects discontinuous or broken tilings") {
  const auto pw = piecewise_limit(model(), model().prime(0), model().prime(1));
  auto regs = pw.regions();
  regs[1].poly = cubic("78", "-81", "27", "10");
  CHECK_THROWS_AS(PiecewisePoly{regs}, ComputationError);
  regs = pw.regions();
  regs[1].lower = QuadNumber(2);
  CHECK_THROWS_AS(PiecewisePoly{regs}, ComputationError);
}

TEST_CASE("product_limit and mixed_sequence") {
  const ExcDivisor S = model().prime(0), F = model().prime(1);
  const BinaryForm p = product_limit(model(), S, F);
  CHECK(p == cubic("33", "891/26 + 99/26*sqrt(3)", "6021/169 - 27/338*sqrt(3)", "2007/169 - 9/338*sqrt(3)"));
  const auto e = mixed_sequence(model(), S, F);
  CHECK(e[3] == QuadNumber(198));
  CHECK(e[2] == q("891/13 + 99/13*sqrt(3)"));
  CHECK(e[1] == q("12042/169 - 27/169*sqrt(3)"));
  CHECK(e[0] == q("12042/169 - 27/169*sqrt(3)"));
}

TEST_CASE("minkowski_check on (Sbar, F)") {
  const auto rep = minkowski_check(model(), model().prime(0), model().prime(1));
  CHECK(rep.all_hold());
  CHECK(rep.checks.size() == 11);
  CHECK(rep.e_product == QuadNumber(6) * product_limit(model(), model().prime(0), model().prime(1)).evaluate(1, 1));
  for (const auto& c : rep.checks) {
    if (c.label == "3) i=0") CHECK(c.equality);
    if (c.label == "2) i=1") CHECK_FALSE(c.equality);
    if (c.label.rfind("4)", 0) == 0) CHECK(c.method.rfind("interval(", 0) == 0);
  }
}

TEST_CASE("decide_cube_root_sum") {
  auto d = decide_cube_root_sum(QuadNumber(27), QuadNumber(8), QuadNumber(1));
  CHECK(d.holds);
  CHECK(d.equality);
  d = decide_cube_root_sum(QuadNumber(28), QuadNumber(8), QuadNumber(1));
  CHECK_FALSE(d.holds);
  d = decide_cube_root_sum(QuadNumber(2), QuadNumber(1), QuadNumber(1));
  CHECK(d.holds);
  CHECK_FALSE(d.equality);
  // Separating (1 + 10^-40)^(1/3) from 1 needs about 40 digits.
  const QuadNumber tiny(Rational(1, Integer("10000000000000000000000000000000000000000")));
  d = decide_cube_root_sum(QuadNumber(1) + tiny, QuadNumber(1), QuadNumber(0));
  CHECK_FALSE(d.holds);
  CHECK(d.digits > 16);
  CHECK_THROWS_WITH_AS(decide_cube_root_sum(QuadNumber(1) + tiny, QuadNumber(1), QuadNumber(0), 16),
                       doctest::Contains("undecidable at max precision"), ComputationError);
}

TEST_CASE("cube_root_bounds") {
  const auto b = cube_root_bounds(Rational(2), Rational(2), 20);
  CHECK(b.lo * b.lo * b.lo <= 2);
  CHECK(b.hi * b.hi * b.hi >= 2);
  CHECK(b.hi - b.lo < Rational(1, 100000));
}

TEST_CASE("property: interval decision matches the exact cubic oracle") {
  for (int t = 0; t < 300; ++t) {
    QuadNumber x = abs(testsupport::small_quad(3, 200));
    QuadNumber y = abs(testsupport::small_quad(3, 30));
    QuadNumber z = abs(testsupport::small_quad(3, 30));
    if (t % 2) {
      // Rational cube roots, with x pushed just off (u + v)^3.
      const QuadNumber u(Rational(uniform(1, 9), uniform(1, 5))), v(Rational(uniform(1, 9), uniform(1, 5)));
      Integer scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(uniform(1, 30)));
      const QuadNumber delta(Rational(uniform(0, 1) ? 1 : -1, scale));
      y = u * u * u;
      z = v * v * v;
      x = (u + v) * (u + v) * (u + v) + delta;
    }
    CHECK(decide_cube_root_sum(x, y, z).holds == cube_root_oracle(x, y, z));
  }
  // Exact equality cases from cubes of field elements.
  for (int t = 0; t < 50; ++t) {
    const QuadNumber u(Rational(uniform(0, 9), uniform(1, 5))), v(Rational(uniform(0, 9), uniform(1, 5)));
    const QuadNumber w = u + v;
    const auto d = decide_cube_root_sum(w * w * w, u * u * u, v * v * v);
    CHECK(d.holds);
    CHECK(d.equality);
  }
}

TEST_CASE("property: piecewise homogeneity, continuity, monotonicity, flatness") {
  const auto pw = piecewise_limit(model(), model().prime(0), model().prime(1));
  const auto& regs = pw.regions();
  for (std::size_t k = 0; k + 1 < regs.size(); ++k) {
    const QuadNumber r = *regs[k].upper;
    CHECK((regs[k].poly - regs[k + 1].poly).on_ray(r).is_zero());
  }
  for (int t = 0; t < 100; ++t) {
    const auto [n, j] = testsupport::random_point(25);
    const QuadNumber N(n), J(j);
    const QuadNumber lambda(Rational(uniform(1, 30), uniform(1, 30)));
    CHECK(pw.value(lambda * N, lambda * J) == lambda * lambda * lambda * pw.value(N, J));
    CHECK(pw.value(N + 1, J) >= pw.value(N, J));
    CHECK(pw.value(N, J + 1) >= pw.value(N, J));
    if (j < n) CHECK(pw.value(N, J) == pw.value(N, QuadNumber(0)));
    CHECK(pw.value(N, J) == limit_single(model(), D(N, J)).limit);
  }
}

TEST_CASE("property: consistency and nonnegativity") {
  for (int t = 0; t < 30; ++t) {
    const auto [a, b] = testsupport::random_point(12);
    const auto [c, d] = testsupport::random_point(12);
    const ExcDivisor d1 = D(a, b), d2 = D(c, d);
    const auto lim = limit_single(model(), d1);
    CHECK(mixed(model(), {{d1, 3}}) == QuadNumber(6) * lim.limit);
    CHECK(sign(lim.multiplicity) >= 0);
    for (const auto& e : mixed_sequence(model(), d1, d2)) CHECK(sign(e) >= 0);
    if (a * d == b * c) continue;
    const auto pw = piecewise_limit(model(), d1, d2);
    CHECK(pw.regions()[0].poly.monomial(3, 0) == lim.limit);
  }
}
