#include "mixmult/geomodel.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mixmult/errors.hpp"

namespace mixmult {

bool ExcDivisor::is_effective() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const QuadNumber& g) { return sign(g) >= 0; });
}

bool ExcDivisor::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const QuadNumber& g) { return g.is_zero(); });
}

ExcDivisor operator+(const ExcDivisor& x, const ExcDivisor& y) {
  if (x.coeffs.size() != y.coeffs.size()) throw ComputationError("model mismatch: divisor lengths differ");
  ExcDivisor r = x;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += y.coeffs[i];
  return r;
}

ExcDivisor operator*(const QuadNumber& s, const ExcDivisor& x) {
  ExcDivisor r = x;
  for (auto& g : r.coeffs) g *= s;
  return r;
}

ThreefoldModel::ThreefoldModel(std::int64_t d, std::vector<std::string> primes, std::vector<LatticePtr> surfaces,
                               std::vector<std::vector<QuadVector>> restrictions)
    : d_(d), primes_(std::move(primes)), surfaces_(std::move(surfaces)), restrictions_(std::move(restrictions)) {
  const std::size_t n = primes_.size();
  if (n == 0) throw ValidationError("model has no prime divisors");
  if (std::set<std::string>(primes_.begin(), primes_.end()).size() != n) {
    throw ValidationError("prime divisor names not unique");
  }
  if (surfaces_.size() != n || restrictions_.size() != n) throw ValidationError("one surface per prime is required");
  for (std::size_t i = 0; i < n; ++i) {
    if (!surfaces_[i]) throw ValidationError("missing surface for prime " + primes_[i]);
    if (surfaces_[i]->field() != d_) throw ValidationError("surface " + surfaces_[i]->name() + " uses another field");
    if (restrictions_[i].size() != n) throw ValidationError("restriction table for " + primes_[i] + " is incomplete");
    for (std::size_t j = 0; j < n; ++j) {
      auto& r = restrictions_[i][j];
      if (r.size() != surfaces_[i]->rank()) {
        throw ValidationError("restriction of " + primes_[j] + " to " + primes_[i] + " has wrong length");
      }
      for (auto& v : r) v = v.in_field(d_);
    }
  }
}

std::size_t ThreefoldModel::index_of(const std::string& prime) const {
  const auto it = std::find(primes_.begin(), primes_.end(), prime);
  if (it == primes_.end()) throw ComputationError("unknown prime divisor '" + prime + "'");
  return static_cast<std::size_t>(it - primes_.begin());
}

ExcDivisor ThreefoldModel::divisor(QuadVector coeffs) const {
  ExcDivisor D{std::move(coeffs)};
  check_divisor(D);
  for (auto& g : D.coeffs) g = g.in_field(d_);
  return D;
}

ExcDivisor ThreefoldModel::prime(std::size_t i) const {
  QuadVector c(prime_count(), QuadNumber::rational(0, d_));
  c.at(i) = QuadNumber::rational(1, d_);
  return {c};
}

void ThreefoldModel::check_divisor(const ExcDivisor& D) const {
  if (D.coeffs.size() != prime_count()) {
    throw ComputationError("model mismatch: divisor has " + std::to_string(D.coeffs.size()) + " coefficients, model has " +
                           std::to_string(prime_count()) + " primes");
  }
}

SurfaceClass ThreefoldModel::restrict(const ExcDivisor& D, std::size_t on) const {
  check_divisor(D);
  if (on >= prime_count()) throw ComputationError("unknown prime index " + std::to_string(on));
  QuadVector c(surfaces_[on]->rank(), QuadNumber::rational(0, d_));
  for (std::size_t i = 0; i < prime_count(); ++i) {
    if (D.coeffs[i].is_zero()) continue;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += D.coeffs[i] * restrictions_[on][i][k];
  }
  return {surfaces_[on], c};
}

QuadNumber ThreefoldModel::triple(const ExcDivisor& D1, const ExcDivisor& D2, const ExcDivisor& D3) const {
  check_divisor(D1);
  check_divisor(D2);
  check_divisor(D3);
  QuadNumber s = QuadNumber::rational(0, d_);
  for (std::size_t e = 0; e < prime_count(); ++e) {
    if (D3.coeffs[e].is_zero()) continue;
    s += D3.coeffs[e] * pair(restrict(D1, e), restrict(D2, e));
  }
  return s;
}

QuadNumber ThreefoldModel::monomial_on(std::size_t i, std::size_t j, std::size_t k, std::size_t on) const {
  const SurfaceLattice& s = *surfaces_.at(on);
  if (on == k) return s.pair(restrictions_[on][i], restrictions_[on][j]);
  if (on == i) return s.pair(restrictions_[on][j], restrictions_[on][k]);
  if (on == j) return s.pair(restrictions_[on][i], restrictions_[on][k]);
  throw ComputationError("monomial_on: surface index is not a factor of the monomial");
}

std::vector<std::vector<QuadVector>> ThreefoldModel::intersection_tensor() const {
  const std::size_t n = prime_count();
  std::vector<std::vector<QuadVector>> t(n, std::vector<QuadVector>(n, QuadVector(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t[i][j][k] = monomial_on(i, j, k, k);
  return t;
}

ValidationReport validate(const ThreefoldModel& model) {
  ValidationReport report;
  const std::size_t n = model.prime_count();
  const auto& names = model.primes();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        MonomialCheck check;
        check.monomial = {i, j, k};
        // Every ordering of (i, j, k) expanded on each of its distinct factors.
        std::array<std::size_t, 3> perm = {i, j, k};
        std::vector<QuadNumber> values;
        do {
          for (std::size_t on : std::set<std::size_t>{i, j, k}) {
            // Expanding ordering (p0,p1,p2) on `on` pairs the two remaining factors.
            const QuadNumber v = model.monomial_on(perm[0], perm[1], perm[2], on);
            values.push_back(v);
            check.expansions.push_back("(" + names[perm[0]] + "," + names[perm[1]] + "," + names[perm[2]] + ") on " +
                                       names[on] + ": " + canonical_string(v));
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        check.consistent = std::all_of(values.begin(), values.end(), [&](const QuadNumber& v) { return v == values[0]; });
        if (!check.consistent) {
          std::ostringstream msg;
          msg << "inconsistent monomial (" << names[i] << "," << names[j] << "," << names[k] << "):";
          for (std::size_t on : std::set<std::size_t>{i, j, k}) {
            const QuadNumber v = model.monomial_on(i, j, k, on);
            msg << " " << canonical_string(v) << " on " << names[on] << ";";
          }
          report.failures.push_back(msg.str());
        }
        report.checks.push_back(std::move(check));
      }
    }
  }
  return report;
}

ThreefoldModel builtin_paper_model() {
  constexpr std::int64_t d = 3;
  auto q = [](long v) { return QuadNumber::rational(v, d); };
  auto vec = [&](std::initializer_list<long> xs) {
    QuadVector out;
    for (long x : xs) out.push_back(q(x));
    return out;
  };

  // W x W: fibres A, B and the diagonal Delta, pairwise 1, squares 0.
  // Nef = Eff = the positive-cone component containing A + B + Delta.
  auto sbar = std::make_shared<const SurfaceLattice>(
      "Sbar", std::vector<std::string>{"A", "B", "Delta"}, QuadMatrix{vec({0, 1, 1}), vec({1, 0, 1}), vec({1, 1, 0})},
      vec({1, 1, 1}), ConeSpec::quadratic(), ConeSpec::quadratic(), d);

  // Ruled surface over a curve: (C0^2) = -9*18, (C0.f) = 1, (f^2) = 0.
  // Nef = {a C0 + b f : a >= 0, b >= 162 a}, Eff = {a, b >= 0}.
  auto fsurf = std::make_shared<const SurfaceLattice>(
      "F", std::vector<std::string>{"C0", "f"}, QuadMatrix{vec({-162, 1}), vec({1, 0})}, vec({1, 163}),
      ConeSpec::polyhedral({vec({1, 0}), vec({-162, 1})}), ConeSpec::polyhedral({vec({1, 0}), vec({0, 1})}), d);

  // restrictions[on][of]
  //   O(Sbar)|Sbar = -3(2A+3B+4Delta),  O(F)|Sbar = 3(A+B+Delta)
  //   O(Sbar)|F    = C0,                O(F)|F    = -C0 - 108 f
  std::vector<std::vector<QuadVector>> restrictions = {
      {vec({-6, -9, -12}), vec({3, 3, 3})},
      {vec({1, 0}), vec({-1, -108})},
  };
  return ThreefoldModel(d, {"Sbar", "F"}, {sbar, fsurf}, std::move(restrictions));
}

QuadNumber quad_from_json(const nlohmann::json& j, std::int64_t d) {
  try {
    if (j.is_number_integer()) return QuadNumber::rational(Rational(j.get<long>()), d);
    if (j.is_string()) return QuadNumber::rational(parse_rational(j.get<std::string>()), d);
    if (j.is_object()) {
      const Rational a = j.contains("a") ? parse_rational(j.at("a").get<std::string>()) : Rational(0);
      const Rational b = j.contains("b") ? parse_rational(j.at("b").get<std::string>()) : Rational(0);
      return QuadNumber(a, b, d);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad number: ") + e.what());
  }
  throw ParseError("bad number: " + j.dump());
}

nlohmann::json quad_to_json(const QuadNumber& x) {
  if (x.is_rational()) return rational_string(x.a());
  return nlohmann::json{{"a", rational_string(x.a())}, {"b", rational_string(x.b())}};
}

namespace {

QuadVector vector_from_json(const nlohmann::json& j, std::int64_t d, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  QuadVector out;
  for (const auto& v : j) out.push_back(quad_from_json(v, d));
  return out;
}

ConeSpec cone_from_json(const nlohmann::json& j, std::int64_t d, const std::string& what) {
  if (!j.is_object() || !j.contains("type")) throw ParseError(what + ": cone needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "quadratic") return ConeSpec::quadratic();
  if (type == "polyhedral") {
    if (!j.contains("inequalities")) throw ParseError(what + ": polyhedral cone needs \"inequalities\"");
    std::vector<QuadVector> rows;
    for (const auto& row : j.at("inequalities")) rows.push_back(vector_from_json(row, d, what));
    return ConeSpec::polyhedral(std::move(rows));
  }
  throw ParseError(what + ": unknown cone type '" + type + "'");
}

nlohmann::json cone_to_json(const ConeSpec& c) {
  if (c.kind == ConeSpec::Kind::quadratic) return {{"type", "quadratic"}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& phi : c.inequalities) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : phi) row.push_back(quad_to_json(v));
    rows.push_back(row);
  }
  return {{"type", "polyhedral"}, {"inequalities", rows}};
}

}  // namespace

ThreefoldModel parse_model(const nlohmann::json& doc) {
  std::int64_t d = 0;
  std::vector<std::string> primes;
  std::vector<LatticePtr> surfaces;
  std::vector<std::vector<QuadVector>> restrictions;
  try {
    d = doc.at("field").at("d").get<std::int64_t>();
    if (!is_squarefree(d)) throw ParseError("field.d must be a squarefree integer >= 2");
    primes = doc.at("primes").get<std::vector<std::string>>();

    std::map<std::string, LatticePtr> by_name;
    for (const auto& s : doc.at("surfaces")) {
      const std::string name = s.at("name").get<std::string>();
      QuadMatrix gram;
      for (const auto& row : s.at("gram")) gram.push_back(vector_from_json(row, d, "surface " + name + " gram"));
      by_name[name] = std::make_shared<const SurfaceLattice>(
          name, s.at("basis").get<std::vector<std::string>>(), std::move(gram),
          vector_from_json(s.at("ample"), d, "surface " + name + " ample"), cone_from_json(s.at("nef"), d, name + " nef"),
          cone_from_json(s.at("eff"), d, name + " eff"), d);
    }
    const auto& table = doc.at("restrictions");
    for (const auto& on : primes) {
      const auto it = by_name.find(on);
      if (it == by_name.end()) throw ParseError("no surface named '" + on + "' for prime " + on);
      surfaces.push_back(it->second);
      if (!table.contains(on)) throw ValidationError("missing restriction table for prime " + on);
      std::vector<QuadVector> row;
      for (const auto& of : primes) {
        if (!table.at(on).contains(of)) {
          throw ValidationError("missing restriction of " + of + " to " + on);
        }
        row.push_back(vector_from_json(table.at(on).at(of), d, "restriction " + of + "|" + on));
      }
      restrictions.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model schema violation: ") + e.what());
  }
  return ThreefoldModel(d, std::move(primes), std::move(surfaces), std::move(restrictions));
}

ThreefoldModel load_model(const nlohmann::json& doc) {
  ThreefoldModel model = parse_model(doc);
  const auto report = validate(model);
  if (!report.ok()) {
    std::string msg = "model validation failed:";
    for (const auto& f : report.failures) msg += " " + f;
    throw ValidationError(msg);
  }
  return model;
}

nlohmann::json read_model_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return doc;
}

ThreefoldModel load_model_file(const std::string& path) { return load_model(read_model_document(path)); }

ThreefoldModel resolve_model(const std::string& name_or_path) {
  if (name_or_path == "paper") return builtin_paper_model();
  return load_model_file(name_or_path);
}

nlohmann::json save_model(const ThreefoldModel& model) {
  nlohmann::json doc;
  doc["field"] = {{"d", model.field()}};
  doc["primes"] = model.primes();
  nlohmann::json surfaces = nlohmann::json::array();
  nlohmann::json table = nlohmann::json::object();
  for (std::size_t i = 0; i < model.prime_count(); ++i) {
    const SurfaceLattice& s = model.surface(i);
    nlohmann::json gram = nlohmann::json::array();
    for (const auto& row : s.gram()) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& v : row) r.push_back(quad_to_json(v));
      gram.push_back(r);
    }
    nlohmann::json ample = nlohmann::json::array();
    for (const auto& v : s.ample()) ample.push_back(quad_to_json(v));
    surfaces.push_back({{"name", s.name()},
                        {"basis", s.basis()},
                        {"gram", gram},
                        {"ample", ample},
                        {"nef", cone_to_json(s.nef())},
                        {"eff", cone_to_json(s.eff())}});
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t j = 0; j < model.prime_count(); ++j) {
      nlohmann::json c = nlohmann::json::array();
      for (const auto& v : model.restriction(i, j)) c.push_back(quad_to_json(v));
      row[model.primes()[j]] = c;
    }
    table[model.primes()[i]] = row;
  }
  doc["surfaces"] = surfaces;
  doc["restrictions"] = table;
  return doc;
}

namespace {

bool same_cone(const ConeSpec& x, const ConeSpec& y) { return x.kind == y.kind && x.inequalities == y.inequalities; }

}  // namespace

bool operator==(const ThreefoldModel& x, const ThreefoldModel& y) {
  if (x.field() != y.field() || x.primes() != y.primes()) return false;
  for (std::size_t i = 0; i < x.prime_count(); ++i) {
    const SurfaceLattice& a = x.surface(i);
    const SurfaceLattice& b = y.surface(i);
    if (a.name() != b.name() || a.basis() != b.basis() || a.gram() != b.gram() || a.ample() != b.ample() ||
        !same_cone(a.nef(), b.nef()) || !same_cone(a.eff(), b.eff())) {
      return false;
    }
    for (std::size_t j = 0; j < x.prime_count(); ++j) {
      if (x.restriction(i, j) != y.restriction(i, j)) return false;
    }
  }
  return true;
}

ExcDivisor parse_divisor(const ThreefoldModel& model, const std::string& text) {
  QuadVector coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(parse_quad(item, model.field()));
  if (coeffs.size() != model.prime_count()) {
    throw ParseError("divisor '" + text + "' has " + std::to_string(coeffs.size()) + " coefficients, model has " +
                     std::to_string(model.prime_count()) + " primes");
  }
  return model.divisor(std::move(coeffs));
}

std::string divisor_string(const ExcDivisor& D) {
  std::string out = "(";
  for (std::size_t i = 0; i < D.coeffs.size(); ++i) {
    if (i) out += ", ";
    out += canonical_string(D.coeffs[i]);
  }
  return out + ")";
}

}  // namespace mixmult
