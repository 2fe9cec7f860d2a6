#include "mixmult/paper_suite.hpp"

#include <functional>

#include "mixmult/filtrations.hpp"
#include "mixmult/multiplicity.hpp"

namespace mixmult {

namespace {

constexpr std::int64_t kD = 3;

QuadNumber q(const std::string& text) { return parse_quad(text, kD); }

BinaryForm cubic(const std::string& n3, const std::string& n2j, const std::string& nj2, const std::string& j3) {
  return BinaryForm({q(n3), q(n2j), q(nj2), q(j3)});
}

std::string vector_string(const QuadVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + canonical_string(v[i]);
  return s + ")";
}

class Suite {
 public:
  // Runs `compute`, which returns the rendered value; passes on exact string match.
  void add(std::string claim, std::string expected, const std::function<std::string()>& compute) {
    GoldenClaim c{std::move(claim), std::move(expected), "", false};
    try {
      c.computed = compute();
      c.pass = c.computed == c.expected;
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
    }
    rows_.push_back(std::move(c));
  }

  std::vector<GoldenClaim> take() { return std::move(rows_); }

 private:
  std::vector<GoldenClaim> rows_;
};

}  // namespace

std::vector<GoldenClaim> run_golden_suite() {
  Suite s;
  const ThreefoldModel m = builtin_paper_model();
  const ExcDivisor S = m.prime(0);
  const ExcDivisor F = m.prime(1);
  auto D = [&](long n, long j) { return m.divisor({QuadNumber(n), QuadNumber(j)}); };

  // Intersection table.
  s.add("(Sbar^3)", "468", [&] { return canonical_string(m.triple(S, S, S)); });
  s.add("(Sbar^2 . F)", "-162", [&] { return canonical_string(m.triple(S, S, F)); });
  s.add("(Sbar . F^2)", "54", [&] { return canonical_string(m.triple(S, F, F)); });
  s.add("(F^3)", "54", [&] { return canonical_string(m.triple(F, F, F)); });

  // Cone thresholds on the two surfaces.
  s.add("Eff(Sbar) exit along A+2B+3Delta - t(A+B+Delta)", "[2 - 1/3*sqrt(3)]", [&] {
    const auto& lat = m.surface_ptr(0);
    const auto t = boundary_slopes(lat->eff(), SurfaceClass(lat, {q("1"), q("2"), q("3")}),
                                   SurfaceClass(lat, {q("-1"), q("-1"), q("-1")}));
    std::string out = "[";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + canonical_string(t[i]);
    return out + "]";
  });
  s.add("C0 + 162f in Nef(F), C0 + 161f not", "true,false", [&] {
    const auto& lat = m.surface_ptr(1);
    const bool a = cone_contains(lat->nef(), SurfaceClass(lat, {q("1"), q("162")}));
    const bool b = cone_contains(lat->nef(), SurfaceClass(lat, {q("1"), q("161")}));
    return std::string(a ? "true" : "false") + "," + (b ? "true" : "false");
  });
  s.add("(-Sbar - 3F)|F = (j-n)C0 + 108j f", "(2, 324)",
        [&] { return vector_string(m.restrict(QuadNumber(-1) * D(1, 3), 1).coords); });

  // Envelopes at the five reference points.
  const struct {
    long n, j;
    const char* gamma;
    int region;
  } envelopes[] = {
      {2, 1, "(2, 2)", 1},
      {1, 1, "(1, 1)", 2},
      {2, 3, "(2, 3)", 2},
      {1, 3, "(27/26 + 3/26*sqrt(3), 3)", 3},
      {0, 1, "(9/26 + 1/26*sqrt(3), 1)", 3},
  };
  for (const auto& row : envelopes) {
    s.add("gamma(" + std::to_string(row.n) + " Sbar + " + std::to_string(row.j) + " F)",
          std::string(row.gamma) + ", region " + std::to_string(row.region), [&] {
            const auto g = gamma(m, D(row.n, row.j));
            return vector_string(g.gamma) + ", region " + std::to_string(g.region.value_or(0));
          });
  }

  // Piecewise limit of l(R/I(m(n Sbar + j F)))/m^3 and its e_R mirror.
  const BinaryForm limits[] = {
      cubic("33", "0", "0", "0"),
      cubic("78", "-81", "27", "9"),
      cubic("0", "0", "0", "2007/169 - 9/338*sqrt(3)"),
  };
  const BinaryForm multiplicities[] = {
      cubic("198", "0", "0", "0"),
      cubic("468", "-486", "162", "54"),
      cubic("0", "0", "0", "12042/169 - 27/169*sqrt(3)"),
  };
  s.add("piecewise boundary slopes", "[1, 3 - 1/3*sqrt(3)]", [&] {
    const auto r = regions(m, S, F);
    std::string out = "[";
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? ", " : "") + canonical_string(r[i]);
    return out + "]";
  });
  for (std::size_t k = 0; k < 3; ++k) {
    s.add("limit region " + std::to_string(k + 1), limits[k].to_string(),
          [&] { return piecewise_limit(m, S, F).regions().at(k).poly.to_string(); });
    s.add("e_R region " + std::to_string(k + 1), multiplicities[k].to_string(),
          [&] { return piecewise_limit(m, S, F).scaled(QuadNumber(6)).regions().at(k).poly.to_string(); });
  }

  s.add("lim l(R/I(mF))/m^3", "2007/169 - 9/338*sqrt(3)", [&] { return canonical_string(limit_single(m, F).limit); });
  s.add("e_R(I(F))", "12042/169 - 27/169*sqrt(3)", [&] { return canonical_string(limit_single(m, F).multiplicity); });
  s.add("e_R(I(Sbar + F))", "198", [&] { return canonical_string(limit_single(m, D(1, 1)).multiplicity); });

  // Product filtration and mixed multiplicities.
  const BinaryForm product =
      cubic("33", "891/26 + 99/26*sqrt(3)", "6021/169 - 27/338*sqrt(3)", "2007/169 - 9/338*sqrt(3)");
  s.add("lim l(R/I(mn Sbar) I(mj F))/m^3", product.to_string(), [&] { return product_limit(m, S, F).to_string(); });
  const struct {
    int exp_s;
    const char* value;
  } mixed_rows[] = {
      {3, "198"},
      {2, "891/13 + 99/13*sqrt(3)"},
      {1, "12042/169 - 27/169*sqrt(3)"},
      {0, "12042/169 - 27/169*sqrt(3)"},
  };
  for (const auto& row : mixed_rows) {
    s.add("e(I(Sbar)^[" + std::to_string(row.exp_s) + "], I(F)^[" + std::to_string(3 - row.exp_s) + "])", row.value,
          [&] { return canonical_string(mixed(m, {{S, row.exp_s}, {F, 3 - row.exp_s}})); });
  }

  s.add("Minkowski inequalities 1)-4) for (Sbar, F)", "all hold", [&] {
    const auto rep = minkowski_check(m, S, F);
    return std::string(rep.all_hold() ? "all hold" : "violated");
  });

  // One-dimensional oracles.
  s.add("ceil(10 sqrt 2)", "15", [] { return sqrt2_length(10).get_str(); });
  s.add("|ceil(n sqrt 2)/n - sqrt 2| <= 1/n at n = 10^5", "true", [] {
    const auto est = limit_probe(sqrt2_sequence(), 100000);
    const QuadNumber err = abs(QuadNumber(est.estimate, Rational(0), 2) - QuadNumber::sqrt_of(2));
    return std::string(err <= QuadNumber(est.error_bound) ? "true" : "false");
  });
  s.add("norm_length(2,2) vs 2*norm_length(1,1)", "3 != 4",
        [] { return norm_length(2, 2).get_str() + " != " + Integer(2 * norm_length(1, 1)).get_str(); });

  return s.take();
}

}  // namespace mixmult
