#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using fibcat::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / "fibcat_cli_test";
  fs::create_directories(d);
  return d;
}

nlohmann::ordered_json without_timing(nlohmann::ordered_json j) {
  for (auto& r : j["reports"]) r.erase("timingMs");
  return j;
}

}  // namespace

TEST_CASE("validate") {
  auto r = cli({"validate", "walkingArrow"});
  CHECK(r.code == 0);
  CHECK(r.out == "OK: category (2 objects, 3 morphisms)\n");

  auto bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"objects":1,"morphisms":[{"src":0,"tgt":0},{"src":0,"tgt":0}],"identities":[0],
                           "comp":[[0,1],[1,0]]})";
  CHECK(cli({"validate", bad.string()}).code == 0);  // Z/2
  std::ofstream(bad) << R"({"objects":1,"morphisms":[{"src":0,"tgt":0},{"src":0,"tgt":0}],"identities":[0],
                           "comp":[[0,1],[1,1]]})";
  CHECK(cli({"validate", bad.string()}).code == 0);  // idempotent monoid
  std::ofstream(bad) << R"({"objects":1,"morphisms":[{"src":0,"tgt":0},{"src":0,"tgt":0}],"identities":[1],
                           "comp":[[0,1],[1,1]]})";
  r = cli({"validate", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") == 0);
  std::ofstream(bad) << "{not json";
  r = cli({"--json", "validate", bad.string()});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["error"] == "ParseError");

  CHECK(cli({"validate", "nosuchcategory"}).code == 1);
  r = cli({"validate", "arrow:finset_skel:2"});
  CHECK(r.out == "OK: category (11 objects, 249 morphisms)\n");
  r = cli({"validate", "stack:gsetsZ2:2:pi=2triv->1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("not a fibration") != std::string::npos);
}

TEST_CASE("build writes JSON that validates, and the workspace remembers names") {
  auto dir = scratch();
  auto ws = dir / "ws.json";
  fs::remove(ws);
  auto out = dir / "fam.json";
  auto r = cli({"--workspace", ws.string(), "build", "fam:deloopZ2:1", "--name", "d", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("built fibration fam:deloopZ2:1") == 0);
  r = cli({"validate", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("OK: functor (2 objects") == 0);
  CHECK(r.out.find("\nfibration\n") != std::string::npos);

  auto w = nlohmann::json::parse(std::ifstream(ws));
  CHECK(w["d"]["expr"] == "fam:deloopZ2:1");
  r = cli({"--workspace", ws.string(), "classify", "d", "--object", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("skeletal generic (= Jacobs: generic)") != std::string::npos);

  CHECK(cli({"build", "fam:deloopZ2:1", "--name", "x"}).code == 1);  // --name needs --workspace
  CHECK(cli({"build", "fam:walkingIso:9"}).code == 1);
}

TEST_CASE("classify renders terminology and witnesses") {
  auto r = cli({"classify", "externalize:walkingIso@finset_skel:2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("split=yes") != std::string::npos);
  CHECK(r.out.find("skeletal=no") != std::string::npos);
  CHECK(r.out.find("skeletal: cartesian maps from X over two base maps [X=1 u1=4 u2=5") != std::string::npos);

  r = cli({"classify", "externalize:deloopZ2@finset_skel:2"});
  CHECK(r.out.find("skeletal generic (= Jacobs: generic)") != std::string::npos);

  r = cli({"classify", "fam:walkingIso:2", "--cleavage", "least"});
  CHECK(r.code == 0);
  CHECK(r.out.find("split=-") != std::string::npos);
  CHECK(r.out.find("cleavage is not split") != std::string::npos);

  r = cli({"classify", "externalize:deloopZ2@finset_skel:2", "--kind", "gaunt"});
  CHECK(r.out == "gaunt objects in externalize:deloopZ2@finset_skel:2: 0\n");

  CHECK(cli({"classify", "fam:deloopZ2:1", "--object", "7"}).code == 1);
  CHECK(cli({"classify", "fam:deloopZ2:1", "--cleavage", "odd"}).code == 1);
  CHECK(cli({"classify", "arrow:finset_skel:2"}).code == 1);  // no distinguished object
  CHECK(cli({"classify", "arrow:finset_skel:2", "--object", "0", "--covers", "all"}).code == 0);
}

TEST_CASE("classify JSON is stable and its candidates replay") {
  const std::vector<std::string> args = {"--json", "classify", "externalize:walkingIso@finset_skel:2", "--all"};
  auto a = cli(args), b = cli(args);
  REQUIRE(a.code == 0);
  auto ja = nlohmann::ordered_json::parse(a.out), jb = nlohmann::ordered_json::parse(b.out);
  CHECK(without_timing(ja) == without_timing(jb));
  for (const auto& rep : ja["reports"]) {
    auto one = cli({"--json", "classify", "externalize:walkingIso@finset_skel:2", "--object",
                    std::to_string(rep["candidate"]["index"].get<int>())});
    auto j = nlohmann::ordered_json::parse(one.out)["reports"][0];
    CHECK(j["flags"] == rep["flags"]);
    CHECK(j["witnesses"] == rep["witnesses"]);
  }
}

TEST_CASE("suite, mutation and exit codes") {
  auto r = cli({"paper-examples", "--only", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2 delooping PASS") == 0);
  r = cli({"--mutate", "invert-gaunt", "paper-examples", "--only", "2"});
  CHECK(r.code == 3);
  CHECK(r.out.find("2 delooping FAIL") == 0);
  r = cli({"--json", "paper-examples", "--only", "1"});
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);
  // the audit turns an inverted gaunt check into exit 2
  CHECK(cli({"--mutate", "invert-gaunt", "classify", "externalize:walkingIso@finset_skel:2"}).code == 2);
  CHECK(cli({"--mutate", "", "paper-examples", "--only", "10"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("search") {
  auto r = cli({"search", "--max-morphisms", "0", "--max-index", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("searched 0 fibrations") == 0);
  int none = 0;
  for (size_t at = 0; (at = r.out.find("none within bounds", at)) != std::string::npos; ++at) ++none;
  CHECK(none == 30);
  CHECK(cli({"search", "--max-morphisms", "9"}).code == 1);
  r = cli({"--json", "search", "--max-morphisms", "2", "--max-index", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 30);
  for (const auto& row : j["rows"]) {
    if (!row["found"]) continue;
    // the example replays through classify
    auto c = cli({"--json", "classify", row["example"]["fibration"].get<std::string>(), "--object",
                  std::to_string(row["example"]["object"].get<int>())});
    REQUIRE(c.code == 0);
    auto flags = nlohmann::json::parse(c.out)["reports"][0]["flags"];
    CHECK(flags[row["holds"].get<std::string>()] == true);
    CHECK(flags[row["fails"].get<std::string>()] == false);
  }
}
