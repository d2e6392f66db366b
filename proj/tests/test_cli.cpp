#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "voa/core/ope_table.hpp"
#include "voa/presentations.hpp"

using namespace voa;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: classify") {
  Run r = run({"--json", "classify", "--level", "-9/4", "--delta", "0", "--w", "0", "--lambda", "1/3"});
  REQUIRE(r.code == 0);
  json j = r.parsed();
  CHECK(j["schema_version"] == kJsonSchemaVersion);
  CHECK(j["status"] == "irreducible");
  CHECK(j["rational_roots"] == json({"-1/2", "-1/4", "0"}));
  CHECK(j["simple_embedding_exists"] == true);

  j = run({"--json", "classify", "--level", "-9/4", "--lambda", "0"}).parsed();
  CHECK(j["status"] == "reducible");
  CHECK(j["maximal_mu"] == "0");
  CHECK(j["top_weights"]["J0"] == "1/2");
  CHECK(j["top_weights"]["L0"] == "-1/2");

  j = run({"--json", "classify", "--level", "-1", "--lambda", "1/3"}).parsed();
  CHECK(j["simple_embedding_exists"] == false);
  CHECK(j["notes"].size() == 1);

  // Watts input: t = 10/3, r = r' = 1, s = s' = 1
  j = run({"--json", "classify", "--watts", "1,1,1,1,10/3", "--lambda", "0"}).parsed();
  CHECK(j["level"] == "1/3");
  CHECK_FALSE(j["notes"].empty());
}

TEST_CASE("cli: usage errors") {
  CHECK(run({"classify", "--level", "1/x", "--lambda", "0"}).code == 2);
  CHECK(run({"classify", "--level", "-3", "--lambda", "0"}).code == 2);
  CHECK(run({"classify", "--lambda", "0"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"ope", "G+", "X"}).code == 2);
  CHECK(run({"table", "dump", "--algebra", "sl2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: classify-critical") {
  json j = run({"--json", "classify-critical", "--delta", "0", "--w", "0", "--lambda", "1/3"}).parsed();
  CHECK(j["status"] == "irreducible");
  j = run({"--json", "classify-critical", "--lambda", "0"}).parsed();
  CHECK(j["status"] == "undetermined");
  CHECK(j["rational_roots"] == json({"-2", "-1", "0"}));

  Run text = run({"classify-critical", "--lambda", "0"});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("status: undetermined") != std::string::npos);
  CHECK(text.out.find("maximal mu: 0") != std::string::npos);
  CHECK(text.out.find("top weights") == std::string::npos);
}

TEST_CASE("cli: text output of every subcommand") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "--level", "-9/4", "--lambda", "0"},
           {"classify", "--level", "-2", "--lambda", "0", "--lambda-im", "1"},
           {"classify-critical", "--lambda", "1/3"},
           {"ope", "--algebra", "zam", "--level", "1/7", "W", "W"},
           {"table", "dump", "--algebra", "center"},
           {"character", "--level", "-9/4", "--lambda", "0", "--order", "4"},
           {"verify-realisation", "--level", "critical"}}) {
    Run r = run(args);
    CHECK_MESSAGE(r.code == 0, args[0]);
    CHECK_FALSE(r.out.empty());
  }
}

TEST_CASE("cli: ope") {
  json j = run({"--json", "ope", "G+", "G-"}).parsed();
  REQUIRE(j["terms"].size() == 3);
  CHECK(j["terms"][0]["pole_order"] == 3);
  CHECK(j["terms"][2]["pole_order"] == 1);
  CHECK(run({"--json", "ope", "G+", "G+"}).parsed()["regular"] == true);
  Run w = run({"ope", "--algebra", "zam", "W", "W"});
  CHECK(w.code == 0);
  CHECK(w.out.find("T(-1)T(-1)") != std::string::npos);
}

TEST_CASE("cli: verify-realisation and verify") {
  Run r = run({"--json", "verify-realisation", "--level", "critical"});
  CHECK(r.code == 0);
  json j = r.parsed();
  CHECK(j["pass"] == true);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
  r = run({"--json", "verify", "--level", "-3"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["level"] == "critical");
  r = run({"--json", "verify", "--level", "1/7"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["summary"]["singular_vectors"] == true);
  CHECK(run({"verify-realisation", "--depth", "2"}).out.find("_(2)") == std::string::npos);
}

TEST_CASE("cli: character and injectivity") {
  json j = run({"--json", "character", "--level", "-9/4", "--lambda", "0", "--order", "5"}).parsed();
  CHECK(j["z_exp"] == "1/2");
  CHECK(j["coeffs"] == json({"1", "2", "5", "10", "20", "36"}));
  CHECK(j["q_offset"] == "-1/12");
  Run r = run({"--json", "injectivity", "--max-weight", "2", "--levels", "1/7"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["rows"].size() == 3);
}

TEST_CASE("bundled tables agree with the built ones") {
  for (const auto& name : bundled_table_names()) {
    CAPTURE(name);
    std::ostringstream out, err;
    REQUIRE(run_cli({"table", "dump", "--algebra", name}, out, err) == 0);
    CHECK(std::string(bundled_table(name)) == out.str());
    OpeTable t = OpeTable::parse(bundled_table(name));
    CHECK(t == OpeTable::parse(out.str()));
  }
  auto names = bundled_table_names();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"bp", "bp-critical", "center", "zam"});
}
