#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gf2to1/cli.hpp"

using namespace gf2to1;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& s) {
  std::vector<json> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) v.push_back(json::parse(line));
  return v;
}

const std::string kSquareMap = R"({"terms":[{"c":"0x1","inner":{"kind":"x"},"e":2}]})";
const std::string kArtinMap = R"({"terms":[{"c":"0x1","inner":{"kind":"x"},"e":2},{"c":"0x1","inner":{"kind":"x"},"e":1}]})";

}  // namespace

TEST_CASE("field-info") {
  const Run r = run({"field-info", "--n", "4"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["field"]["modulus"] == "0x13");
  CHECK(j["order"] == 16);
  CHECK(j["version"] == std::string(kVersion));
  CHECK(json::parse(run({"--modulus", "0x19", "field-info", "--n", "4"}).out)["field"]["modulus"] == "0x19");
  CHECK(run({"field-info", "--n", "25"}).code == kExitUsage);
  CHECK(run({"--modulus", "0x15", "field-info", "--n", "4"}).code == kExitUsage);
}

TEST_CASE("check: family and arbitrary maps") {
  const Run fam = run({"check", "--family", R"({"row":3,"m":2,"delta":"0x8","c":"0x1"})"});
  CHECK(fam.code == kExitOk);
  const json j = json::parse(fam.out);
  CHECK(j["verdict"]["two_to_one"] == true);
  CHECK(j["verdict"]["profile"]["histogram"]["2"] == 8);

  CHECK(run({"check", "--map", kSquareMap, "--domain", "full:n=2"}).code == kExitVerdict);
  CHECK(run({"check", "--n", "4", "--map", kArtinMap}).code == kExitOk);
  CHECK(run({"check", "--n", "4", "--map", kArtinMap, "--domain", "trace_slice:m=2,gamma=0x0"}).code == kExitOk);
  const Run mu = run({"check", "--n", "4", "--map",
                      R"({"terms":[{"c":"0x1","inner":{"kind":"x"},"e":1},{"c":"0x1","inner":{"kind":"x"},"e":14}]})",
                      "--domain", "mu:d=5"});
  CHECK(mu.code == kExitOk);
  CHECK(json::parse(mu.out)["verdict"]["profile"]["histogram"]["1"] == 1);
}

TEST_CASE("check: parse and usage errors") {
  CHECK(run({"check", "--family", R"({"row":3,"m":2,"delta":"0xzz","c":"0x1"})"}).code == kExitUsage);
  CHECK(run({"check", "--family", "{not json"}).code == kExitUsage);
  CHECK(run({"check", "--family", R"({"row":1,"m":3,"delta":"0x8"})"}).code == kExitUsage);
  CHECK(run({"check"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--jobs", "0", "field-info", "--n", "3"}).code == kExitUsage);
}

TEST_CASE("sweep: JSON lines with a summary") {
  const Run r = run({"sweep", "--row", "3", "--m", "2"});
  CHECK(r.code == kExitOk);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 9);
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) CHECK(recs[i]["ok"] == true);
  CHECK(recs.back()["summary"] == true);
  CHECK(recs.back()["instances"] == 8);
  CHECK(recs.back()["failed"] == 0);

  const Run r5 = run({"sweep", "--row", "5", "--m", "2", "--i", "1"});
  CHECK(r5.code == kExitOk);
  CHECK(lines(r5.out).back()["instances"] == 24);

  const Run empty = run({"sweep", "--row", "1", "--m", "3"});
  CHECK(empty.code == kExitOk);
  const auto e = lines(empty.out);
  REQUIRE(e.size() == 1);
  CHECK(e[0]["instances"] == 0);
  CHECK(e[0]["violation"]["condition"] == "m_even");
}

TEST_CASE("sweep: CSV") {
  const Run r = run({"--csv", "sweep", "--row", "4", "--m", "2"});
  CHECK(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "No,k,m,i,s,delta,c,conditions,verdict,involution");
  int rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  CHECK(rows == 8);
  CHECK(run({"--csv", "field-info", "--n", "3"}).code == kExitUsage);
}

TEST_CASE("involution") {
  const Run both = run({"involution", "--family", R"({"row":4,"m":2,"delta":"0x8","c":"0x1"})", "--mode", "both"});
  CHECK(both.code == kExitOk);
  const Run closed = run({"involution", "--family", R"({"row":1,"m":2,"delta":"0x8","c":"0x1"})", "--mode", "closed"});
  CHECK(closed.code == kExitOk);
  CHECK(closed.err.find("NoClosedForm") != std::string::npos);
  CHECK(run({"involution", "--odd", "1", "--m", "1"}).code == kExitOk);
  // Item 2 as listed is not paired with its involution.
  CHECK(run({"involution", "--odd", "2", "--m", "1"}).code == kExitVerdict);
  CHECK(run({"involution", "--odd", "2", "--m", "1", "--repaired"}).code == kExitOk);
  CHECK(run({"involution", "--odd", "7", "--m", "1"}).code == kExitUsage);
  CHECK(run({"involution", "--n", "4", "--map", kArtinMap}).code == kExitOk);
  CHECK(run({"involution", "--n", "4", "--map", kArtinMap, "--mode", "closed"}).code == kExitUsage);
  CHECK(run({"involution", "--n", "2", "--map", kSquareMap}).code == kExitVerdict);
}

TEST_CASE("count") {
  CHECK(json::parse(run({"count", "--n", "2"}).out)["constructive"] == 12);
  CHECK(json::parse(run({"count", "--n", "3"}).out)["formula"] == 1680);
  const Run o = run({"count", "--n", "2", "--oracle"});
  CHECK(o.code == kExitOk);
  CHECK(json::parse(o.out)["oracle"] == 12);
  CHECK(run({"count", "--n", "4"}).code == kExitUsage);
  CHECK(run({"count", "--n", "2", "--involution", R"([["0x0","0x2"],["0x2","0x0"],["0x1","0x3"],["0x3","0x1"]])"}).code == kExitOk);
}

TEST_CASE("resultant") {
  const Run r25 = run({"resultant", "--which", "eq25", "--m", "1"});
  CHECK(r25.code == kExitOk);
  CHECK(json::parse(r25.out)["report"]["mismatches"] == 0);
  const Run r19 = run({"--seed", "7", "resultant", "--which", "eq19", "--m", "2", "--samples", "100"});
  const json j = json::parse(r19.out);
  CHECK(j["report"]["seed"] == 7);
  CHECK(j["report"]["mismatches_with_leading_factor_yX"] == 0);
  CHECK(r19.code == (j["report"]["mismatches"] == 0 ? kExitOk : kExitVerdict));
  CHECK(run({"resultant", "--which", "eq99", "--m", "2"}).code == kExitUsage);
}

TEST_CASE("agw") {
  const Run c1 = run({"agw", "--construction", "1", "--n", "6", "--m", "2", "--a", "0x3a"});
  CHECK(c1.code == kExitOk);
  CHECK(json::parse(c1.out)["construction"]["certified"] == true);
  // A failed hypothesis is a verdict, not a usage error.
  CHECK(run({"agw", "--construction", "1", "--n", "6", "--m", "2", "--a", "0x0"}).code == kExitVerdict);
  CHECK(run({"agw", "--construction", "2", "--k", "2", "--n", "3", "--a", "0x0", "--b", "0x0"}).code == kExitVerdict);
}

TEST_CASE("agw on a diagram given as JSON") {
  // x^2 + x over F16 with a constant lambda: a single fiber.
  const std::string artin = R"({"terms":[{"c":"0x1","inner":{"kind":"x"},"e":2},{"c":"0x1","inner":{"kind":"x"},"e":1}]})";
  const std::string d = R"({"field":{"n":4,"modulus":"0x13"},"A":{"kind":"full"},"Abar":{"kind":"image","spec":)" + artin +
                        R"(,"base":{"kind":"full"}},"S":{"kind":"explicit","elements":["0x0"]},)"
                        R"("Sbar":{"kind":"explicit","elements":["0x0"]},"f":)" + artin +
                        R"(,"fbar":{"terms":[{"c":"0x1","inner":{"kind":"x"},"e":1}]},"lambda":{"terms":[]},"lambdabar":{"terms":[]}})";
  CHECK(run({"agw", "--diagram", d, "--mode", "fiber"}).code == kExitOk);
  // Base mode refuses: S has odd size.
  CHECK(run({"agw", "--diagram", d, "--mode", "base"}).code == kExitVerdict);
  CHECK(run({"agw", "--diagram", "{}"}).code == kExitUsage);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::vector<std::string>> cmds = {
      {"--seed", "3", "resultant", "--which", "eq19", "--m", "2", "--samples", "30"},
      {"--jobs", "3", "sweep", "--row", "7", "--m", "2"},
      {"check", "--family", R"({"row":6,"m":2,"i":1,"delta":"0x2","c":"0x1"})"},
  };
  for (const auto& c : cmds) {
    const Run a = run(c), b = run(c);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  // Job count does not change the sweep.
  CHECK(run({"--jobs", "1", "sweep", "--row", "5", "--m", "2", "--i", "1"}).out ==
        run({"--jobs", "4", "sweep", "--row", "5", "--m", "2", "--i", "1"}).out);
  // Timing appears only on request.
  const std::string fam = R"({"row":3,"m":2,"delta":"0x8","c":"0x1"})";
  CHECK(run({"check", "--family", fam}).out.find("timing") == std::string::npos);
  CHECK(run({"--timing", "check", "--family", fam}).out.find("timing") != std::string::npos);
}

TEST_CASE("modulus table from the environment") {
  const std::string path = "gf2to1_test_moduli.json";
  {
    std::ofstream f(path);
    f << R"({"4": "0x19"})";
  }
  ::setenv("GF2TO1_MODULUS_TABLE", path.c_str(), 1);
  const Run r = run({"field-info", "--n", "4"});
  ::unsetenv("GF2TO1_MODULUS_TABLE");
  std::remove(path.c_str());
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out)["field"]["modulus"] == "0x19");
}
