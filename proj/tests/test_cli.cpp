#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "radfact/cli.hpp"
#include "radfact/report.hpp"

using namespace radfact;

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

std::string data(const char* name) { return std::string(RADFACT_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  CHECK(run({"validate", "--builtin", "zmod:12"}).code == kExitOk);
  CHECK(run({"validate", "--builtin", "s-system:zmod-mult:4"}).code == kExitOk);
  CHECK(run({"validate", "--file", data("zmod6.json")}).code == kExitOk);
  CHECK(run({"validate", "--file", data("z6-d-system.json")}).code == kExitOk);
  CHECK(run({"validate", "--file", data("broken.json")}).code == kExitParse);
  CHECK(run({"validate", "--file", data("z2-bad-closure.json")}).code == kExitFailure);
  CHECK(run({"validate", "--file", data("missing.json")}).code != kExitOk);
  CHECK(run({"validate", "--builtin", "zmod:banana"}).code == kExitParse);
  CHECK(run({"factor", "--builtin", "zmod:12"}).code == kExitParse);
  CHECK(run({"factor", "--builtin", "zmod:12", "--element", "4"}).code == kExitOk);
  CHECK(run({"factor", "--builtin", "numerical:2,3", "--element", "ideal:3+H"}).code == kExitFailure);
  CHECK(run({"factor", "--builtin", "dedekind:3", "--element", "7:1"}).code == kExitParse);
  CHECK(run({"check-sp", "--builtin", "rank2"}).code == kExitOk);
  CHECK(run({"check-sp", "--builtin", "zmod:12"}).code == kExitFailure);
  CHECK(run({"check-sp", "--builtin", "numerical:2,3", "--flavor", "monoid-8.5"}).code == kExitOk);
  CHECK(run({"check-sp", "--builtin", "rank2", "--flavor", "ring"}).code == kExitParse);
  CHECK(run({"represent", "--builtin", "power-of-j:30"}).code == kExitOk);
  CHECK(run({"represent", "--builtin", "rank2"}).code == kExitFailure);
  CHECK(run({"frobnicate"}).code == kExitParse);
  CHECK(run({"validate", "--format", "xml", "--builtin", "zmod:12"}).code == kExitParse);
}

TEST_CASE("json reports follow the schema") {
  const std::vector<std::vector<std::string>> cmds{
      {"validate", "--builtin", "zmod:12", "--json"},
      {"validate", "--builtin", "d-system:zmod:6", "--json"},
      {"validate", "--builtin", "dedekind:3", "--json"},
      {"factor", "--builtin", "dedekind:3", "--element", "2:2,3:1", "--json"},
      {"factor", "--builtin", "numerical:2,3", "--element", "ideal:3+H", "--json"},
      {"check-sp", "--builtin", "dedekind:2", "--json"},
      {"check-sp", "--builtin", "s-system:zmod-mult:4", "--json"},
      {"represent", "--builtin", "dedekind:3", "--format", "json"},
  };
  for (const auto& c : cmds) {
    CAPTURE(c[0] + " " + c[2]);
    const auto r = run(c);
    REQUIRE(r.code != kExitParse);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(check_report_schema(j).empty());
    CHECK(j["command"] == c[0]);
    CHECK(j["timing"].is_null());
  }
}

TEST_CASE("frozen outputs") {
  const auto f = nlohmann::json::parse(run({"factor", "--builtin", "dedekind:3", "--element", "2:2,3:1", "--json"}).out);
  CHECK(f["data"].dump().find("[\"2:1,3:1\",\"2:1\"]") != std::string::npos);
  const auto z = nlohmann::json::parse(run({"factor", "--builtin", "zmod:12", "--element", "4", "--json"}).out);
  CHECK(z["data"].dump().find("[\"2\",\"2\"]") != std::string::npos);
  const auto bad = nlohmann::json::parse(run({"factor", "--builtin", "numerical:2,3", "--element", "ideal:3+H", "--json"}).out);
  CHECK_FALSE(bad["witnesses"].empty());
  const auto rep = run({"represent", "--builtin", "rank2"});
  CHECK(rep.out.find("dimension 2") != std::string::npos);
}

TEST_CASE("same seed, same bytes") {
  for (const auto& c : std::initializer_list<std::vector<std::string>>{std::vector<std::string>{"check-sp", "--builtin", "rank2", "--seed", "3", "--json"},
                                           {"represent", "--builtin", "dedekind:unbounded", "--seed", "9", "--json"},
                                           {"validate", "--builtin", "numerical:3,5", "--seed", "2", "--json"}}) {
    CAPTURE(c[0]);
    CHECK(run(c).out == run(c).out);
  }
}

TEST_CASE("serial flag gives the same report") {
  auto a = run({"validate", "--builtin", "d-system:zmod:8", "--json"}).out;
  auto b = run({"validate", "--builtin", "d-system:zmod:8", "--json", "--serial"}).out;
  auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
  CHECK(ja["verdicts"] == jb["verdicts"]);
  CHECK(ja["witnesses"] == jb["witnesses"]);
}

TEST_CASE("timing is opt-in") {
  const auto j = nlohmann::json::parse(run({"validate", "--builtin", "zmod:12", "--json", "--timing"}).out);
  CHECK_FALSE(j["timing"].is_null());
}

TEST_CASE("text output") {
  const auto r = run({"validate", "--builtin", "zmod:12"});
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

}  // TEST_SUITE
