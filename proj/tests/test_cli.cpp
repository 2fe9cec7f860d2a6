#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mixmult/cli.hpp"
#include "mixmult/geomodel.hpp"

using namespace mixmult;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mixmult");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string temp_model(const nlohmann::json& doc, const std::string& name) {
  const std::string path = "mixmult_test_" + name + ".json";
  std::ofstream(path) << doc.dump(2);
  return path;
}

}  // namespace

TEST_CASE("gamma command") {
  const auto r = cli({"gamma", "--model", "paper", "-D", "0,1"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("gamma = (9/26 + 1/26*sqrt(3), 1), region 3\n", 0) == 0);
}

TEST_CASE("limit command") {
  const auto r = cli({"limit", "--model", "paper", "-D", "1,1"});
  CHECK(r.status == 0);
  CHECK(r.out == "limit = 33, e_R = 198\n");
}

TEST_CASE("verify-paper passes on a pristine build") {
  const auto r = cli({"verify-paper"});
  CHECK(r.status == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("claims pass") != std::string::npos);
}

TEST_CASE("text and json agree") {
  const auto t = cli({"piecewise", "-D1", "1,0", "-D2", "0,1"});
  const auto j = cli({"piecewise", "-D1", "1,0", "-D2", "0,1", "--output", "json"});
  REQUIRE(t.status == 0);
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["command"] == "piecewise");
  REQUIRE(doc["regions"].size() == 3);
  for (const auto& reg : doc["regions"]) CHECK(t.out.find(reg["poly"].get<std::string>()) != std::string::npos);
  CHECK(doc["regions"][2]["upper"] == "inf");
  CHECK(t.out.find("region 2: [1, 3 - 1/3*sqrt(3)) -> 78*n^3 - 81*n^2*j + 27*n*j^2 + 9*j^3") != std::string::npos);
}

TEST_CASE("remaining subcommands") {
  auto r = cli({"intersect"});
  CHECK(r.status == 0);
  CHECK(r.out.find("(Sbar,Sbar,Sbar) = 468") != std::string::npos);
  r = cli({"intersect", "-D", "1,1"});
  CHECK(r.out == "triple = 198\n");
  r = cli({"intersect", "-D1", "1,0", "-D2", "0,1", "-D", "0,1"});
  CHECK(r.out == "triple = 54\n");
  r = cli({"antinef", "-D", "1,1"});
  CHECK(r.out == "antinef = true\n");
  r = cli({"mixed", "-D1", "1,0", "-D2", "0,1", "--exponents", "2,1"});
  CHECK(r.out == "e = 891/13 + 99/13*sqrt(3)\n");
  r = cli({"product", "-D1", "1,0", "-D2", "0,1"});
  CHECK(r.out.find("limit = 33*n^3 + (891/26 + 99/26*sqrt(3))*n^2*j") == 0);
  r = cli({"minkowski", "-D1", "1,0", "-D2", "0,1"});
  CHECK(r.status == 0);
  CHECK(r.out.find("summary: all hold") != std::string::npos);
  r = cli({"examples", "--n-max", "100"});
  CHECK(r.out.find("n,length,estimate,error_bound\n1,2,2.0000000000,1\n") == 0);
  CHECK(r.out.find("100,142,1.4200000000,1/100") != std::string::npos);
  r = cli({"validate-model"});
  CHECK(r.status == 0);
  CHECK(r.out.find("model valid") != std::string::npos);
}

TEST_CASE("determinism") {
  const auto a = cli({"product", "-D1", "2,1", "-D2", "1,3", "--output", "json"});
  const auto b = cli({"product", "-D1", "2,1", "-D2", "1,3", "--output", "json"});
  CHECK(a.out == b.out);
}

TEST_CASE("error paths and exit codes") {
  auto r = cli({"gamma", "-D", "1,x"});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("parse error:", 0) == 0);
  r = cli({"gamma", "-D", "1,2,3"});
  CHECK(r.status == 2);
  r = cli({"gamma"});
  CHECK(r.status == 2);
  r = cli({"frobnicate"});
  CHECK(r.status == 2);
  r = cli({"gamma", "-D", "1,1", "--output", "xml"});
  CHECK(r.status == 2);
  r = cli({"gamma", "-D", "-1,2"});
  CHECK(r.status == 3);
  CHECK(r.err.rfind("computation error:", 0) == 0);
  r = cli({"piecewise", "-D1", "1,1", "-D2", "2,2"});
  CHECK(r.status == 3);
  r = cli({"examples", "--sequence", "cubic"});
  CHECK(r.status == 2);
}

TEST_CASE("model files") {
  auto doc = save_model(builtin_paper_model());
  const std::string good = temp_model(doc, "good");
  auto r = cli({"gamma", "--model", good, "-D", "1,3"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("gamma = (27/26 + 3/26*sqrt(3), 3), region 3", 0) == 0);

  doc["restrictions"]["F"]["F"] = {"-1", "-107"};
  const std::string bad = temp_model(doc, "bad");
  r = cli({"gamma", "--model", bad, "-D", "1,3"});
  CHECK(r.status == 2);
  CHECK(r.err.rfind("validation error:", 0) == 0);
  CHECK(r.err.find("(Sbar,F,F)") != std::string::npos);

  r = cli({"validate-model", "--model", bad});
  CHECK(r.status == 2);
  CHECK(r.out.find("(Sbar,F,F): INCONSISTENT") != std::string::npos);
  CHECK(r.out.find("model invalid") != std::string::npos);
}
