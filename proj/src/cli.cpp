#include "mixmult/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mixmult/errors.hpp"
#include "mixmult/filtrations.hpp"
#include "mixmult/multiplicity.hpp"
#include "mixmult/paper_suite.hpp"

namespace mixmult {

using nlohmann::json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"intersect", "gamma",    "antinef",  "limit",
                                                 "mixed",     "piecewise", "product", "minkowski",
                                                 "examples",  "verify-paper", "validate-model"};
  return names;
}

namespace {

// A report rendered twice: `lines` for text, `doc` for JSON.
struct Rendered {
  std::vector<std::string> lines;
  json doc = json::object();
  int status = kExitOk;
};

json quad_array(const QuadVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(canonical_string(x));
  return a;
}

std::string quad_tuple(const QuadVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + canonical_string(v[i]);
  return s + ")";
}

std::string slope_string(const std::optional<QuadNumber>& s) { return s ? canonical_string(*s) : "inf"; }

// Truncated decimal expansion of a nonnegative rational.
std::string decimal_string(const Rational& q, unsigned places) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  const Rational scaled = q * scale;
  Integer t;
  mpz_fdiv_q(t.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string digits = t.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

const std::string& require(const std::optional<std::string>& v, const char* flag, const std::string& command) {
  if (!v) throw ParseError(command + " needs " + flag);
  return *v;
}

std::pair<int, int> parse_exponents(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--exponents expects d1,d2");
  try {
    std::size_t used1 = 0, used2 = 0;
    const int d1 = std::stoi(text.substr(0, comma), &used1);
    const int d2 = std::stoi(text.substr(comma + 1), &used2);
    if (used1 != comma || used2 != text.size() - comma - 1) throw ParseError("--exponents expects d1,d2");
    return {d1, d2};
  } catch (const std::logic_error&) {
    throw ParseError("--exponents expects two integers d1,d2");
  }
}

Rendered cmd_intersect(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  std::vector<ExcDivisor> ds;
  for (const auto* opt : {&r.divisor1, &r.divisor2, &r.divisor}) {
    if (*opt) ds.push_back(parse_divisor(m, **opt));
  }
  if (ds.empty()) {
    const auto& names = m.primes();
    const auto t = m.intersection_tensor();
    out.doc["table"] = json::array();
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i; j < names.size(); ++j)
        for (std::size_t k = j; k < names.size(); ++k) {
          const std::string v = canonical_string(t[i][j][k]);
          out.lines.push_back("(" + names[i] + "," + names[j] + "," + names[k] + ") = " + v);
          out.doc["table"].push_back({{"monomial", {names[i], names[j], names[k]}}, {"value", v}});
        }
    return out;
  }
  if (ds.size() == 1) ds = {ds[0], ds[0], ds[0]};
  if (ds.size() != 3) throw ParseError("intersect takes no divisors, -D alone (cube), or -D1 -D2 -D");
  const std::string v = canonical_string(m.triple(ds[0], ds[1], ds[2]));
  out.lines.push_back("triple = " + v);
  out.doc["triple"] = v;
  return out;
}

Rendered cmd_gamma(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const auto g = gamma(m, parse_divisor(m, require(r.divisor, "-D", "gamma")));
  std::string line = "gamma = " + quad_tuple(g.gamma);
  out.doc["gamma"] = quad_array(g.gamma);
  if (g.region) {
    line += ", region " + std::to_string(*g.region);
    out.doc["region"] = *g.region;
  }
  out.lines.push_back(line);
  std::string active;
  for (const auto& a : g.active) active += (active.empty() ? "" : " ") + a;
  out.lines.push_back("active = {" + active + "}");
  out.doc["active"] = g.active;
  return out;
}

Rendered cmd_antinef(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const bool v = is_antinef(m, parse_divisor(m, require(r.divisor, "-D", "antinef")));
  out.lines.push_back(std::string("antinef = ") + (v ? "true" : "false"));
  out.doc["antinef"] = v;
  return out;
}

Rendered cmd_limit(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const auto rep = limit_single(m, parse_divisor(m, require(r.divisor, "-D", "limit")));
  out.lines.push_back("limit = " + canonical_string(rep.limit) + ", e_R = " + canonical_string(rep.multiplicity));
  out.doc["limit"] = canonical_string(rep.limit);
  out.doc["e_R"] = canonical_string(rep.multiplicity);
  return out;
}

Rendered cmd_mixed(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const auto [d1, d2] = parse_exponents(require(r.exponents, "--exponents", "mixed"));
  const ExcDivisor D1 = parse_divisor(m, require(r.divisor1, "-D1", "mixed"));
  const ExcDivisor D2 = parse_divisor(m, require(r.divisor2, "-D2", "mixed"));
  const std::string v = canonical_string(mixed(m, {{D1, d1}, {D2, d2}}));
  out.lines.push_back("e = " + v);
  out.doc["e"] = v;
  return out;
}

Rendered cmd_piecewise(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const ExcDivisor D1 = parse_divisor(m, require(r.divisor1, "-D1", "piecewise"));
  const ExcDivisor D2 = parse_divisor(m, require(r.divisor2, "-D2", "piecewise"));
  const auto pw = piecewise_limit(m, D1, D2);
  out.doc["regions"] = json::array();
  for (std::size_t k = 0; k < pw.regions().size(); ++k) {
    const auto& reg = pw.regions()[k];
    const std::string lo = canonical_string(reg.lower);
    const std::string hi = slope_string(reg.upper);
    const std::string poly = reg.poly.to_string();
    const std::string e = (QuadNumber(6) * reg.poly).to_string();
    out.lines.push_back("region " + std::to_string(k + 1) + ": [" + lo + ", " + hi + ") -> " + poly + "; e_R = " + e);
    out.doc["regions"].push_back({{"region", k + 1}, {"lower", lo}, {"upper", hi}, {"poly", poly}, {"e_R", e}});
  }
  return out;
}

Rendered cmd_product(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const ExcDivisor D1 = parse_divisor(m, require(r.divisor1, "-D1", "product"));
  const ExcDivisor D2 = parse_divisor(m, require(r.divisor2, "-D2", "product"));
  const std::string poly = product_limit(m, D1, D2).to_string();
  out.lines.push_back("limit = " + poly);
  out.doc["limit"] = poly;
  const auto e = mixed_sequence(m, D1, D2);
  out.doc["mixed"] = json::array();
  for (int i = kDimension; i >= 0; --i) {
    const std::string label = "e(I1^[" + std::to_string(i) + "],I2^[" + std::to_string(kDimension - i) + "])";
    const std::string v = canonical_string(e[static_cast<std::size_t>(i)]);
    out.lines.push_back(label + " = " + v);
    out.doc["mixed"].push_back({{"label", label}, {"value", v}});
  }
  return out;
}

Rendered cmd_minkowski(const ThreefoldModel& m, const CommandRequest& r) {
  Rendered out;
  const ExcDivisor D1 = parse_divisor(m, require(r.divisor1, "-D1", "minkowski"));
  const ExcDivisor D2 = parse_divisor(m, require(r.divisor2, "-D2", "minkowski"));
  const auto rep = minkowski_check(m, D1, D2);
  out.doc["checks"] = json::array();
  for (const auto& c : rep.checks) {
    const std::string verdict = c.holds ? (c.equality ? "holds (equality)" : "holds") : "violated";
    out.lines.push_back(c.label + ": " + c.statement + ": " + c.lhs + " <= " + c.rhs + " " + verdict + " [" + c.method + "]");
    out.doc["checks"].push_back({{"label", c.label},
                                 {"statement", c.statement},
                                 {"lhs", c.lhs},
                                 {"rhs", c.rhs},
                                 {"verdict", verdict},
                                 {"method", c.method}});
  }
  const std::string summary = rep.all_hold() ? "all hold" : "violated";
  out.lines.push_back("summary: " + summary);
  out.doc["summary"] = summary;
  return out;
}

Rendered cmd_examples(const CommandRequest& r) {
  Rendered out;
  LengthSequence seq;
  if (r.sequence == "sqrt2") {
    seq = sqrt2_sequence();
  } else if (r.sequence == "norm") {
    seq = norm_diagonal_sequence();
  } else {
    throw ParseError("--sequence must be sqrt2 or norm");
  }
  if (r.n_max == 0) throw ParseError("--n-max must be >= 1");
  // First ten indices, then powers of ten, then n_max itself.
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(10, r.n_max); ++n) ns.push_back(n);
  for (std::uint64_t p = 100; p <= r.n_max && p <= UINT64_MAX / 10; p *= 10) ns.push_back(p);
  if (ns.back() != r.n_max) ns.push_back(r.n_max);

  out.lines.push_back("n,length,estimate,error_bound");
  out.doc["sequence"] = r.sequence;
  out.doc["rows"] = json::array();
  for (const auto n : ns) {
    const auto est = limit_probe(seq, n);
    const std::string len = seq.evaluator(n).get_str();
    const std::string e = decimal_string(est.estimate, 10);
    const std::string b = rational_string(est.error_bound);
    out.lines.push_back(std::to_string(n) + "," + len + "," + e + "," + b);
    out.doc["rows"].push_back({{"n", n}, {"length", len}, {"estimate", e}, {"error_bound", b}});
  }
  return out;
}

Rendered cmd_verify() {
  Rendered out;
  const auto rows = run_golden_suite();
  std::size_t passed = 0;
  out.lines.push_back("claim | expected | computed | result");
  out.doc["claims"] = json::array();
  for (const auto& c : rows) {
    if (c.pass) ++passed;
    const char* verdict = c.pass ? "PASS" : "FAIL";
    out.lines.push_back(c.claim + " | " + c.expected + " | " + c.computed + " | " + verdict);
    out.doc["claims"].push_back(
        {{"claim", c.claim}, {"expected", c.expected}, {"computed", c.computed}, {"result", verdict}});
  }
  const std::string summary = std::to_string(passed) + "/" + std::to_string(rows.size()) + " claims pass";
  out.lines.push_back(summary);
  out.doc["summary"] = summary;
  if (passed != rows.size()) out.status = kExitMismatch;
  return out;
}

Rendered cmd_validate(const CommandRequest& r) {
  Rendered out;
  // Unvalidated construction first, so a failing report can be shown in full.
  const ThreefoldModel m =
      r.model == "paper" ? builtin_paper_model() : parse_model(read_model_document(r.model));
  const auto report = validate(m);
  out.doc["checks"] = json::array();
  for (const auto& c : report.checks) {
    std::string mono;
    for (std::size_t i : c.monomial) mono += (mono.empty() ? "" : ",") + m.primes()[i];
    const std::string verdict = c.consistent ? "consistent" : "INCONSISTENT";
    out.lines.push_back("(" + mono + "): " + verdict + " over " + std::to_string(c.expansions.size()) + " expansions");
    out.doc["checks"].push_back({{"monomial", mono}, {"verdict", verdict}, {"expansions", c.expansions}});
  }
  out.lines.push_back(std::string("model ") + (report.ok() ? "valid" : "invalid"));
  out.doc["valid"] = report.ok();
  out.doc["model"] = save_model(m);
  if (!report.ok()) out.status = kExitParse;
  return out;
}

}  // namespace

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  const bool as_json = request.output == "json";
  try {
    if (request.output != "text" && request.output != "json") throw ParseError("--output must be text or json");
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), request.command) == names.end()) {
      throw ParseError("unknown command '" + request.command + "'");
    }
    Rendered r;
    const std::string& c = request.command;
    if (c == "examples") {
      r = cmd_examples(request);
    } else if (c == "verify-paper") {
      r = cmd_verify();
    } else if (c == "validate-model") {
      r = cmd_validate(request);
    } else {
      const ThreefoldModel m = resolve_model(request.model);
      if (c == "intersect") r = cmd_intersect(m, request);
      else if (c == "gamma") r = cmd_gamma(m, request);
      else if (c == "antinef") r = cmd_antinef(m, request);
      else if (c == "limit") r = cmd_limit(m, request);
      else if (c == "mixed") r = cmd_mixed(m, request);
      else if (c == "piecewise") r = cmd_piecewise(m, request);
      else if (c == "product") r = cmd_product(m, request);
      else r = cmd_minkowski(m, request);
    }
    if (as_json) {
      json doc = {{"command", request.command}};
      doc.update(r.doc);
      out << doc.dump(2) << "\n";
    } else {
      for (const auto& line : r.lines) out << line << "\n";
    }
    return r.status;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitComputation;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  // CLI11 short flags are single characters; -D1/-D2 are spelled --D1/--D2 internally.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-D1" || a == "-D2") a = "-" + a;
    args.push_back(std::move(a));
  }
  std::reverse(args.begin(), args.end());

  CommandRequest req;
  CLI::App app{"Exact multiplicities of divisorial filtrations on a resolution model", "mixmult"};
  app.add_option("command", req.command, "intersect | gamma | antinef | limit | mixed | piecewise | product | "
                                         "minkowski | examples | verify-paper | validate-model")
      ->required();
  app.add_option("--model", req.model, "\"paper\" or a model JSON file")->capture_default_str();
  app.add_option("-D", req.divisor, "divisor coefficients in prime order, e.g. \"0,1\"");
  app.add_option("--D1", req.divisor1, "first divisor (also -D1)");
  app.add_option("--D2", req.divisor2, "second divisor (also -D2)");
  app.add_option("--exponents", req.exponents, "mixed multiplicity exponents d1,d2");
  app.add_option("--n-max", req.n_max, "largest index for examples")->capture_default_str();
  app.add_option("--sequence", req.sequence, "examples sequence: sqrt2 | norm")->capture_default_str();
  app.add_option("--output", req.output, "text | json")->capture_default_str();
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  return run(req, out, err);
}

}  // namespace mixmult
