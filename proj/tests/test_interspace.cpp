#include "doctest.h"
#include "mixmult/errors.hpp"
#include "support.hpp"

using namespace mixmult;
using testsupport::q;
using testsupport::uniform;

namespace {

const ThreefoldModel& model() {
  static const ThreefoldModel m = builtin_paper_model();
  return m;
}

SurfaceClass on_s(long a, long b, long c) {
  return SurfaceClass(model().surface_ptr(0), {QuadNumber(a), QuadNumber(b), QuadNumber(c)});
}

SurfaceClass on_f(const QuadNumber& a, const QuadNumber& b) { return SurfaceClass(model().surface_ptr(1), {a, b}); }

}  // namespace

TEST_CASE("pair") {
  CHECK(pair(on_s(1, 0, 0), on_s(0, 1, 0)) == QuadNumber(1));
  CHECK(pair(on_s(1, 1, 1), on_s(1, 1, 1)) == QuadNumber(6));
  CHECK(pair(on_s(4, -2, 7), on_s(0, 0, 0)) == QuadNumber(0));
  CHECK(pair(on_f(1, 0), on_f(1, 0)) == QuadNumber(-162));
  CHECK_THROWS_AS(pair(on_s(1, 0, 0), on_f(1, 0)), ComputationError);
}

TEST_CASE("cone_contains") {
  const auto& S = *model().surface_ptr(0);
  CHECK(cone_contains(S.eff(), on_s(1, 2, 3) - on_s(1, 1, 1)));
  CHECK_FALSE(cone_contains(S.eff(), on_s(1, 2, 3) - QuadNumber(2) * on_s(1, 1, 1)));
  const auto& F = *model().surface_ptr(1);
  CHECK(cone_contains(F.nef(), on_f(1, 162)));
  CHECK_FALSE(cone_contains(F.nef(), on_f(1, 161)));
  CHECK(cone_contains(F.eff(), on_f(0, 1)));
  CHECK_FALSE(cone_contains(F.nef(), on_f(0, -1)));
  // The negative of an ample class sits in the other nappe of the quadratic cone.
  CHECK_FALSE(cone_contains(S.nef(), on_s(-1, -1, -1)));
}

TEST_CASE("boundary is inside the closed cone") {
  const auto& S = *model().surface_ptr(0);
  const SurfaceClass edge = on_s(1, 2, 3) - q("2 - 1/3*sqrt(3)") * on_s(1, 1, 1);
  CHECK(pair(edge, edge) == QuadNumber(0));
  CHECK(cone_contains(S.eff(), edge));
}

TEST_CASE("boundary_slopes") {
  const auto& S = *model().surface_ptr(0);
  auto t = boundary_slopes(S.eff(), on_s(1, 2, 3), QuadNumber(-1) * on_s(1, 1, 1));
  REQUIRE(t.size() == 1);
  CHECK(t[0] == q("2 - 1/3*sqrt(3)"));

  const auto& F = *model().surface_ptr(1);
  t = boundary_slopes(F.nef(), on_f(0, 1), on_f(1, 0));
  REQUIRE(t.size() == 1);
  CHECK(t[0] == QuadNumber(Rational(1, 162)));

  CHECK(boundary_slopes(S.eff(), on_s(1, 1, 1), on_s(1, 1, 1)).empty());
}

TEST_CASE("boundary_slopes refuses roots outside the field") {
  // (1,1,1) + t(2,-1,0) has self-intersection 6 + 4t - 4t^2, with roots (1 +- sqrt 7)/2.
  const auto& S = *model().surface_ptr(0);
  CHECK_THROWS_WITH_AS(boundary_slopes(S.eff(), on_s(1, 1, 1), on_s(2, -1, 0)), doctest::Contains("discriminant outside field"),
                       ComputationError);
}

TEST_CASE("solve_quadratic") {
  bool zero = false;
  auto r = solve_quadratic(QuadNumber(1), QuadNumber(-4), QuadNumber(1), 3, &zero);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == q("2 - sqrt(3)"));
  CHECK(r[1] == q("2 + sqrt(3)"));
  CHECK_FALSE(zero);
  r = solve_quadratic(QuadNumber(1), QuadNumber(-2), QuadNumber(1), 3);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == QuadNumber(1));
  CHECK(solve_quadratic(QuadNumber(1), QuadNumber(0), QuadNumber(1), 3).empty());
  solve_quadratic(QuadNumber(0), QuadNumber(0), QuadNumber(0), 3, &zero);
  CHECK(zero);
}

TEST_CASE("lattice validation") {
  const QuadMatrix asym = {{QuadNumber(0), QuadNumber(1)}, {QuadNumber(2), QuadNumber(0)}};
  CHECK_THROWS_WITH_AS(SurfaceLattice("X", {"a", "b"}, asym, {QuadNumber(1), QuadNumber(1)}, ConeSpec::quadratic(),
                                      ConeSpec::quadratic(), 3),
                       doctest::Contains("gram not symmetric"), ValidationError);
  const QuadMatrix hyp = {{QuadNumber(0), QuadNumber(1)}, {QuadNumber(1), QuadNumber(0)}};
  CHECK_THROWS_AS(SurfaceLattice("X", {"a", "a"}, hyp, {QuadNumber(1), QuadNumber(1)}, ConeSpec::quadratic(),
                                 ConeSpec::quadratic(), 3),
                  ValidationError);
  // Ample class on the boundary of the nef cone.
  CHECK_THROWS_AS(SurfaceLattice("X", {"a", "b"}, hyp, {QuadNumber(1), QuadNumber(0)}, ConeSpec::quadratic(),
                                 ConeSpec::quadratic(), 3),
                  ValidationError);
}

TEST_CASE("property: pair is symmetric and bilinear") {
  const auto& S = *model().surface_ptr(0);
  for (int t = 0; t < 100; ++t) {
    QuadVector x, y, z;
    for (int k = 0; k < 3; ++k) {
      x.push_back(testsupport::small_quad());
      y.push_back(testsupport::small_quad());
      z.push_back(testsupport::small_quad());
    }
    const QuadNumber a = testsupport::small_quad(), b = testsupport::small_quad();
    QuadVector ax_by(3);
    for (int k = 0; k < 3; ++k) ax_by[k] = a * x[k] + b * y[k];
    CHECK(S.pair(x, y) == S.pair(y, x));
    CHECK(S.pair(ax_by, z) == a * S.pair(x, z) + b * S.pair(y, z));
  }
}

TEST_CASE("property: ample classes lie in their cones") {
  for (std::size_t i = 0; i < model().prime_count(); ++i) {
    const auto& L = model().surface(i);
    CHECK(cone_contains(L, L.nef(), L.ample()));
    CHECK(cone_contains(L, L.eff(), L.ample()));
  }
}

TEST_CASE("property: the quadratic cone of Sbar is self-dual on samples") {
  const auto& S = *model().surface_ptr(0);
  int tested = 0;
  while (tested < 100) {
    const SurfaceClass x = on_s(uniform(-5, 9), uniform(-5, 9), uniform(-5, 9));
    const SurfaceClass y = on_s(uniform(-5, 9), uniform(-5, 9), uniform(-5, 9));
    if (!cone_contains(S.nef(), x) || !cone_contains(S.nef(), y)) continue;
    ++tested;
    CHECK(sign(pair(x, y)) >= 0);
  }
}

TEST_CASE("property: boundary points are on the boundary") {
  const auto& S = *model().surface_ptr(0);
  const auto& F = *model().surface_ptr(1);
  for (int t = 0; t < 50; ++t) {
    const SurfaceClass base = on_s(uniform(1, 6), uniform(1, 6), uniform(1, 6));
    const SurfaceClass dir = QuadNumber(-uniform(1, 3)) * on_s(1, 1, 1);
    std::vector<QuadNumber> slopes;
    try {
      slopes = boundary_slopes(S.eff(), base, dir);
    } catch (const ComputationError&) {
      continue;  // root outside Q(sqrt 3)
    }
    for (const auto& s : slopes) {
      const SurfaceClass p = base + s * dir;
      CHECK(pair(p, p) == QuadNumber(0));
    }
    const SurfaceClass fb = on_f(QuadNumber(uniform(0, 3)), QuadNumber(uniform(500, 900)));
    const SurfaceClass fd = on_f(QuadNumber(1), QuadNumber(uniform(-5, 5)));
    for (const auto& s : boundary_slopes(F.nef(), fb, fd)) {
      const SurfaceClass p = fb + s * fd;
      bool vanishes = false;
      for (const auto& phi : F.nef().inequalities) vanishes = vanishes || dot(phi, p.coords).is_zero();
      CHECK(vanishes);
    }
  }
}
