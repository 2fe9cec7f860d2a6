#include "mixmult/envelope.hpp"

#include <algorithm>
#include <set>

#include "mixmult/errors.hpp"

namespace mixmult {

QuadNumber Constraint::value(const QuadVector& g, const QuadVector& a) const {
  if (kind == Kind::linear) {
    QuadNumber v = dot(linear, g);
    if (effectivity) v -= a.at(*effectivity);
    return v;
  }
  QuadNumber v;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero()) continue;
    for (std::size_t l = 0; l < g.size(); ++l) v += g[i] * quadratic[i][l] * g[l];
  }
  return v;
}

bool Constraint::involves(std::size_t i) const {
  if (kind == Kind::linear) return !linear.at(i).is_zero();
  return std::any_of(quadratic.at(i).begin(), quadratic.at(i).end(), [](const QuadNumber& v) { return !v.is_zero(); });
}

std::vector<Constraint> envelope_constraints(const ThreefoldModel& model) {
  const std::size_t n = model.prime_count();
  const std::int64_t d = model.field();
  const QuadNumber zero = QuadNumber::rational(0, d);
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < n; ++i) {
    Constraint c;
    c.id = "eff[" + model.primes()[i] + "]";
    c.linear = QuadVector(n, zero);
    c.linear[i] = QuadNumber::rational(1, d);
    c.effectivity = i;
    out.push_back(std::move(c));
  }
  for (std::size_t e = 0; e < n; ++e) {
    const SurfaceLattice& s = model.surface(e);
    const std::string prefix = "nef[" + model.primes()[e] + "]";
    // Column i of the restriction map g -> x_E(g) is -(E_i|_E).
    std::vector<QuadVector> column(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& v : model.restriction(e, i)) column[i].push_back(-v);
    }
    if (s.nef().kind == ConeSpec::Kind::polyhedral) {
      for (std::size_t k = 0; k < s.nef().inequalities.size(); ++k) {
        Constraint c;
        c.id = prefix + "." + std::to_string(k);
        for (std::size_t i = 0; i < n; ++i) c.linear.push_back(dot(s.nef().inequalities[k], column[i]));
        out.push_back(std::move(c));
      }
    } else {
      Constraint q;
      q.id = prefix + ".quad";
      q.kind = Constraint::Kind::quadratic;
      q.quadratic.assign(n, QuadVector(n, zero));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) q.quadratic[i][l] = s.pair(column[i], column[l]);
      out.push_back(std::move(q));
      Constraint c;
      c.id = prefix + ".ample";
      for (std::size_t i = 0; i < n; ++i) c.linear.push_back(s.pair(column[i], s.ample()));
      out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

struct LinearEq {
  QuadVector coeffs;
  QuadNumber rhs;
};

struct QuadraticEq {
  QuadMatrix q;
  QuadVector lin;
  QuadNumber constant;
};

struct SolveResult {
  std::vector<QuadVector> points;
  bool unsupported = false;
};

QuadNumber quad_eval(const QuadraticEq& eq, const QuadVector& u) {
  QuadNumber v = eq.constant;
  for (std::size_t i = 0; i < u.size(); ++i) {
    v += eq.lin[i] * u[i];
    for (std::size_t l = 0; l < u.size(); ++l) v += u[i] * eq.q[i][l] * u[l];
  }
  return v;
}

QuadNumber bilinear(const QuadMatrix& q, const QuadVector& x, const QuadVector& y) {
  QuadNumber v;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t l = 0; l < y.size(); ++l) v += x[i] * q[i][l] * y[l];
  return v;
}

// Isolated solutions of linear equalities plus quadratic equalities in m
// unknowns. Linear elimination first; a one-parameter remainder is fed to the
// quadratics. Remainders of dimension >= 2 with enough quadratics to cut them
// down are beyond this solver and reported as unsupported.
SolveResult solve_system(std::size_t m, std::vector<LinearEq> rows, const std::vector<QuadraticEq>& quads, std::int64_t d) {
  SolveResult result;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p].coeffs[col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const QuadNumber inv = QuadNumber(1) / rows[r].coeffs[col];
    for (auto& c : rows[r].coeffs) c *= inv;
    rows[r].rhs *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o].coeffs[col].is_zero()) continue;
      const QuadNumber f = rows[o].coeffs[col];
      for (std::size_t k = 0; k < m; ++k) rows[o].coeffs[k] -= f * rows[r].coeffs[k];
      rows[o].rhs -= f * rows[r].rhs;
    }
    pivot_cols.push_back(col);
    ++r;
  }
  for (std::size_t o = r; o < rows.size(); ++o) {
    if (!rows[o].rhs.is_zero()) return result;  // inconsistent
  }

  const QuadNumber zero = QuadNumber::rational(0, d);
  QuadVector base(m, zero);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) base[pivot_cols[i]] = rows[i].rhs;
  std::vector<QuadVector> kernel;
  for (std::size_t f = 0; f < m; ++f) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), f) != pivot_cols.end()) continue;
    QuadVector v(m, zero);
    v[f] = QuadNumber::rational(1, d);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -rows[i].coeffs[f];
    kernel.push_back(std::move(v));
  }

  if (kernel.empty()) {
    if (std::all_of(quads.begin(), quads.end(), [&](const QuadraticEq& q) { return quad_eval(q, base).is_zero(); })) {
      result.points.push_back(base);
    }
    return result;
  }
  if (kernel.size() >= 2) {
    result.unsupported = quads.size() >= kernel.size();
    return result;
  }

  const QuadVector& v = kernel.front();
  std::optional<std::vector<QuadNumber>> roots;
  for (const auto& q : quads) {
    const QuadNumber alpha = bilinear(q.q, v, v);
    const QuadNumber beta = QuadNumber(2) * bilinear(q.q, base, v) + dot(q.lin, v);
    const QuadNumber gamma = quad_eval(q, base);
    bool trivial = false;
    auto ts = solve_quadratic(alpha, beta, gamma, d, &trivial);
    if (trivial) continue;
    if (!roots) {
      roots = std::move(ts);
    } else {
      std::erase_if(*roots, [&](const QuadNumber& t) { return std::find(ts.begin(), ts.end(), t) == ts.end(); });
    }
  }
  if (!roots) return result;  // a line of solutions: not isolated
  for (const auto& t : *roots) {
    QuadVector u = base;
    for (std::size_t k = 0; k < m; ++k) u[k] += t * v[k];
    result.points.push_back(std::move(u));
  }
  return result;
}

// Calls f(indices) for every k-subset of {0..n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) idx.push_back(i);
    f(idx);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

struct PointEnvelope {
  QuadVector g;
  std::vector<std::size_t> active;
  std::size_t skipped = 0;
};

bool dominated_by(const QuadVector& lo, const QuadVector& hi) {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return false;
  }
  return true;
}

PointEnvelope envelope_at(const ThreefoldModel& model, const std::vector<Constraint>& cons, const QuadVector& a) {
  const std::size_t n = model.prime_count();
  const std::int64_t d = model.field();
  std::vector<QuadVector> feasible;
  PointEnvelope out;

  for_each_subset(cons.size(), n, [&](const std::vector<std::size_t>& subset) {
    std::vector<LinearEq> lin;
    std::vector<QuadraticEq> quad;
    for (std::size_t c : subset) {
      const Constraint& k = cons[c];
      if (k.kind == Constraint::Kind::linear) {
        lin.push_back({k.linear, k.effectivity ? a[*k.effectivity] : QuadNumber::rational(0, d)});
      } else {
        quad.push_back({k.quadratic, QuadVector(n, QuadNumber::rational(0, d)), QuadNumber::rational(0, d)});
      }
    }
    const SolveResult sol = solve_system(n, std::move(lin), quad, d);
    if (sol.unsupported) ++out.skipped;
    for (const auto& g : sol.points) {
      const bool ok = std::all_of(cons.begin(), cons.end(), [&](const Constraint& k) { return sign(k.value(g, a)) >= 0; });
      if (ok) feasible.push_back(g);
    }
  });

  if (feasible.empty()) throw ComputationError("no minimal envelope: no feasible anti-nef raising found");
  const auto best = std::find_if(feasible.begin(), feasible.end(), [&](const QuadVector& g) {
    return std::all_of(feasible.begin(), feasible.end(), [&](const QuadVector& h) { return dominated_by(g, h); });
  });
  if (best == feasible.end()) {
    throw ComputationError("no minimal envelope: minimal feasible points are incomparable");
  }
  out.g = *best;
  for (std::size_t c = 0; c < cons.size(); ++c) {
    if (cons[c].value(out.g, a).is_zero()) out.active.push_back(c);
  }
  return out;
}

void require_effective(const ThreefoldModel& model, const ExcDivisor& D, const char* what) {
  if (D.coeffs.size() != model.prime_count()) {
    throw ComputationError(std::string(what) + ": divisor does not match the model's prime count");
  }
  if (!D.is_effective()) throw ComputationError(std::string(what) + ": divisor " + divisor_string(D) + " is not effective");
  if (D.is_zero()) throw ComputationError(std::string(what) + ": divisor is zero");
}

void require_independent(const ExcDivisor& D1, const ExcDivisor& D2) {
  const auto& x = D1.coeffs;
  const auto& y = D2.coeffs;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k < x.size(); ++k)
      if (!(x[i] * y[k] - x[k] * y[i]).is_zero()) return;
  throw ComputationError("dependent directions: " + divisor_string(D1) + " and " + divisor_string(D2));
}

QuadVector along(const ExcDivisor& D1, const ExcDivisor& D2, const QuadNumber& r) {
  QuadVector a = D1.coeffs;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += r * D2.coeffs[i];
  return a;
}

// Slopes r > 0 where some n+1 constraints hold at once at a feasible point
// over a(r) = D1 + r D2. Every active-set change happens at one of these.
std::vector<QuadNumber> candidate_slopes(const ThreefoldModel& model, const std::vector<Constraint>& cons,
                                         const ExcDivisor& D1, const ExcDivisor& D2) {
  const std::size_t n = model.prime_count();
  const std::int64_t d = model.field();
  const QuadNumber zero = QuadNumber::rational(0, d);
  std::vector<QuadNumber> out;
  for_each_subset(cons.size(), n + 1, [&](const std::vector<std::size_t>& subset) {
    std::vector<LinearEq> lin;
    std::vector<QuadraticEq> quad;
    for (std::size_t c : subset) {
      const Constraint& k = cons[c];
      if (k.kind == Constraint::Kind::linear) {
        // unknowns (g_0..g_{n-1}, r)
        QuadVector row = k.linear;
        row.push_back(zero);
        QuadNumber rhs = zero;
        if (k.effectivity) {
          row[n] = -D2.coeffs[*k.effectivity];
          rhs = D1.coeffs[*k.effectivity];
        }
        lin.push_back({std::move(row), rhs});
      } else {
        QuadMatrix q(n + 1, QuadVector(n + 1, zero));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t l = 0; l < n; ++l) q[i][l] = k.quadratic[i][l];
        quad.push_back({std::move(q), QuadVector(n + 1, zero), zero});
      }
    }
    for (const auto& u : solve_system(n + 1, std::move(lin), quad, d).points) {
      const QuadNumber& r = u[n];
      if (sign(r) <= 0) continue;
      const QuadVector g(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
      const QuadVector a = along(D1, D2, r);
      if (std::all_of(cons.begin(), cons.end(), [&](const Constraint& k) { return sign(k.value(g, a)) >= 0; })) {
        out.push_back(r);
      }
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// One open slope interval between consecutive candidates.
struct Piece {
  QuadNumber lo;
  std::optional<QuadNumber> hi;
  QuadNumber probe;
  std::vector<std::size_t> active;
};

std::vector<Piece> pieces(const ThreefoldModel& model, const std::vector<Constraint>& cons, const ExcDivisor& D1,
                          const ExcDivisor& D2) {
  const auto cand = candidate_slopes(model, cons, D1, D2);
  std::vector<Piece> out;
  const QuadNumber zero = QuadNumber::rational(0, model.field());
  for (std::size_t k = 0; k <= cand.size(); ++k) {
    Piece p;
    p.lo = k == 0 ? zero : cand[k - 1];
    if (k < cand.size()) {
      p.hi = cand[k];
      p.probe = (p.lo + *p.hi) / QuadNumber(2);
    } else {
      p.probe = p.lo + QuadNumber(1);
    }
    p.active = envelope_at(model, cons, along(D1, D2, p.probe)).active;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> active_ids(const std::vector<Constraint>& cons, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(cons[i].id);
  return out;
}

}  // namespace

bool is_antinef(const ThreefoldModel& model, const ExcDivisor& D) {
  const ExcDivisor neg = QuadNumber(-1) * D;
  for (std::size_t e = 0; e < model.prime_count(); ++e) {
    if (!cone_contains(model.surface(e).nef(), model.restrict(neg, e))) return false;
  }
  return true;
}

GammaEnvelope gamma(const ThreefoldModel& model, const ExcDivisor& D) {
  require_effective(model, D, "gamma");
  const auto cons = envelope_constraints(model);
  const PointEnvelope pe = envelope_at(model, cons, D.coeffs);
  GammaEnvelope out;
  out.input = D;
  out.gamma = pe.g;
  out.active = active_ids(cons, pe.active);
  out.skipped_active_sets = pe.skipped;
  if (model.prime_count() == 2) {
    const auto slopes = regions(model, model.prime(0), model.prime(1));
    int region = 1;
    for (const auto& r : slopes) {
      // a_2 / a_1 >= r, with a_1 == 0 meaning slope infinity.
      if (D.coeffs[0].is_zero() || D.coeffs[1] >= r * D.coeffs[0]) ++region;
    }
    out.region = region;
  }
  return out;
}

std::vector<QuadNumber> regions(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2) {
  require_effective(model, D1, "regions");
  require_effective(model, D2, "regions");
  require_independent(D1, D2);
  const auto cons = envelope_constraints(model);
  const auto ps = pieces(model, cons, D1, D2);
  std::vector<QuadNumber> out;
  for (std::size_t k = 1; k < ps.size(); ++k) {
    if (ps[k].active != ps[k - 1].active) out.push_back(ps[k].lo);
  }
  return out;
}

std::vector<EnvelopeRegion> envelope_regions(const ThreefoldModel& model, const ExcDivisor& D1, const ExcDivisor& D2) {
  require_effective(model, D1, "piecewise");
  require_effective(model, D2, "piecewise");
  require_independent(D1, D2);
  const std::size_t n = model.prime_count();
  const std::int64_t d = model.field();
  const auto cons = envelope_constraints(model);
  const auto ps = pieces(model, cons, D1, D2);

  std::vector<EnvelopeRegion> out;
  std::size_t first = 0;
  while (first < ps.size()) {
    std::size_t last = first;
    while (last + 1 < ps.size() && ps[last + 1].active == ps[first].active) ++last;

    // Fit g(n, j) = alpha n + beta j from two slopes inside the first piece.
    const Piece& p = ps[first];
    QuadNumber s1, s2;
    if (p.hi) {
      s1 = p.lo + (*p.hi - p.lo) / QuadNumber(3);
      s2 = p.lo + QuadNumber(2) * (*p.hi - p.lo) / QuadNumber(3);
    } else {
      s1 = p.lo + QuadNumber(1);
      s2 = p.lo + QuadNumber(2);
    }
    const QuadVector g1 = envelope_at(model, cons, along(D1, D2, s1)).g;
    const QuadVector g2 = envelope_at(model, cons, along(D1, D2, s2)).g;
    std::vector<BinaryForm> forms;
    for (std::size_t i = 0; i < n; ++i) {
      const QuadNumber beta = (g1[i] - g2[i]) / (s1 - s2);
      const QuadNumber alpha = g1[i] - beta * s1;
      forms.push_back(BinaryForm::linear(alpha.in_field(d), beta.in_field(d)));
    }

    // Certificate: every active constraint vanishes identically in (n, j).
    for (std::size_t c : p.active) {
      const Constraint& k = cons[c];
      BinaryForm residual = BinaryForm::zero(k.kind == Constraint::Kind::linear ? 1 : 2);
      if (k.kind == Constraint::Kind::linear) {
        for (std::size_t i = 0; i < n; ++i) residual += k.linear[i] * forms[i];
        if (k.effectivity) {
          residual -= BinaryForm::linear(D1.coeffs[*k.effectivity], D2.coeffs[*k.effectivity]);
        }
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t l = 0; l < n; ++l) residual += k.quadratic[i][l] * (forms[i] * forms[l]);
      }
      if (!residual.is_zero()) {
        throw ComputationError("non-polynomial region: constraint " + k.id + " is not identically active on [" +
                               canonical_string(p.lo) + ", " + (p.hi ? canonical_string(*p.hi) : "inf") + ")");
      }
    }
    // The fitted envelope must reproduce every piece of the region.
    for (std::size_t k = first; k <= last; ++k) {
      const QuadVector g = envelope_at(model, cons, along(D1, D2, ps[k].probe)).g;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(forms[i].evaluate(QuadNumber(1), ps[k].probe) == g[i])) {
          throw ComputationError("non-polynomial region: envelope branch changes inside [" + canonical_string(p.lo) + ", " +
                                 (ps[last].hi ? canonical_string(*ps[last].hi) : "inf") + ")");
        }
      }
    }

    EnvelopeRegion region;
    region.lower = p.lo;
    region.upper = ps[last].hi;
    region.active = active_ids(cons, p.active);
    region.gamma = std::move(forms);
    out.push_back(std::move(region));
    first = last + 1;
  }
  return out;
}

}  // namespace mixmult
