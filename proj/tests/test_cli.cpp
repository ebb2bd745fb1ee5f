#include <doctest.h>

#include "fusiondepth/cli.hpp"
#include "fusiondepth/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fusiondepth;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fusiondepth_cli_test";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("golden outputs") {
  const auto roots = run({"roots", "info", "G2"});
  REQUIRE(roots.code == 0);
  const auto g2 = roots.parsed();
  CHECK(g2["marks"] == json::array({3, 2}));
  CHECK(g2["comarks"] == json::array({1, 2}));
  CHECK(g2["norms"] == json::array({"2/3", "2"}));
  CHECK(g2["dual_coxeter"] == 4);
  CHECK(g2["highest_root"] == "0,1");
  CHECK(g2["weyl_group_order"] == "12");

  const auto depth = run({"depth", "A1", "3"});
  REQUIRE(depth.code == 0);
  CHECK(depth.parsed()["depth"] == 3);
  CHECK(depth.parsed()["lower"] == 3);
  CHECK(depth.parsed()["upper"] == 3);
  CHECK(depth.parsed()["mode"] == "level");
  CHECK(run({"depth", "A1", "3", "--classical"}).parsed()["mode"] == "classical");

  const auto fusion = run({"fusion", "A1", "2", "2", "2"});
  REQUIRE(fusion.code == 0);
  CHECK(fusion.parsed()["terms"] == json{{"0", 1}});

  const auto tensor = run({"tensor", "A2", "1,0", "0,1"});
  CHECK(tensor.parsed()["terms"] == json{{"0,0", 1}, {"1,1", 1}});
  CHECK(run({"tensor", "A2", "1,0", "0,1", "--oracle"}).parsed()["terms"] == tensor.parsed()["terms"]);

  CHECK(run({"lpmax", "G2", "2"}).parsed()["value"] == "3");
  CHECK(run({"bk", "A2", "1"}).parsed()["weights"] == json::array({"0,0", "0,1", "1,0"}));

  const auto trace = run({"trace", "A1", "1", "--floor", "1"});
  REQUIRE(trace.code == 0);
  CHECK(trace.parsed()["pf_eigenvalue"] == 2.0);
  CHECK(trace.parsed()["floor_weights"][1]["1"] == 0.5);

  const auto smatrix = run({"smatrix", "A1", "2"});
  REQUIRE(smatrix.code == 0);
  CHECK(smatrix.parsed()["quantum_dimensions"].size() == 3);

  const auto table = run({"fusion-table", "A1", "2"});
  REQUIRE(table.code == 0);
  CHECK(table.parsed()["basis"] == json::array({"0", "1", "2"}));

  // Every command carries a traceability anchor.
  for (const auto* o : {&roots, &depth, &fusion, &tensor, &trace, &smatrix, &table}) {
    CHECK(o->parsed()["paper_ref"].is_string());
  }
}

TEST_CASE("tower output formats") {
  const auto j = run({"tower", "A1", "2", "--floors", "4"});
  REQUIRE(j.code == 0);
  const auto floors = j.parsed()["floors"];
  REQUIRE(floors.size() == 4);
  CHECK(j.parsed()["stationary_from"] == 2);

  const auto dot = run({"tower", "A1", "1", "--floors", "2", "--format", "dot"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(dot.out.find("f0_0 -> f1_1 [label=\"1\"]") != std::string::npos);

  CHECK(run({"tower", "A1", "2", "--floors", "4", "--format", "xml"}).code == 2);
  CHECK(run({"tower", "A1", "2", "--floors", "0"}).code != 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"depth"}).code == 2);
  CHECK(run({"depth", "Q3", "2"}).code == 2);
  CHECK(run({"depth", "A0", "2"}).code == 2);
  CHECK(run({"tensor", "A2", "1,x", "0,1"}).code == 2);
  CHECK(run({"tensor", "A2", "1,0,0", "0,1"}).code == 2);
  CHECK(run({"depth", "A1", "abc"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const auto outside = run({"fusion", "A1", "2", "3", "0"});
  CHECK(outside.code == 1);
  CHECK(outside.err.find("WeightNotInLevel") != std::string::npos);
  CHECK(run({"depth", "A1", "0"}).code == 1);
  CHECK(run({"tensor", "A2", "-1,0", "0,1"}).code == 1);
  CHECK(run({"smatrix", "E8", "1"}).code == 1);
}

TEST_CASE("configuration") {
  cli::Config c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.tolerance("pf") == 1e-5);
  CHECK_THROWS_AS(c.tolerance("nope"), InvalidConfig);

  const auto overlaid = cli::Config::from_json(json{{"character_cap", 500}, {"tolerances", {{"pf", 1e-7}}}});
  CHECK(overlaid.character_cap == 500);
  CHECK(overlaid.tolerance("pf") == 1e-7);
  CHECK(overlaid.tolerance("rounding") == 1e-6);

  CHECK_THROWS_AS(cli::Config::from_json(json{{"unknown", 1}}), InvalidConfig);
  CHECK_THROWS_AS(cli::Config::from_json(json{{"tolerances", {{"pf", 1.0}}}}), InvalidConfig);
  CHECK_THROWS_AS(cli::Config::from_json(json{{"tolerances", {{"pf", 0.0}}}}), InvalidConfig);
  CHECK_THROWS_AS(cli::Config::from_json(json{{"weyl_cap", 0}}), InvalidConfig);

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"tolerances": {"rounding": 5}})";
  CHECK(run({"--config", bad.string(), "depth", "A1", "1"}).code == 2);

  const auto tight = scratch("tight.json");
  std::ofstream(tight) << R"({"weyl_cap": 2})";
  CHECK(run({"--config", tight.string(), "smatrix", "A2", "1"}).code == 1);
  CHECK(run({"--config", (tight.parent_path() / "missing.json").string(), "depth", "A1", "1"}).code == 2);
}

TEST_CASE("cache path precedence") {
  const auto from_env = scratch("env_cache.txt");
  const auto from_flag = scratch("flag_cache.txt");
  ::setenv(cli::kCacheEnv, from_env.c_str(), 1);
  CHECK(run({"depth", "B2", "2"}).code == 0);
  CHECK(std::filesystem::exists(from_env));

  CHECK(run({"--cache", from_flag.string(), "depth", "G2", "2"}).code == 0);
  CHECK(std::filesystem::exists(from_flag));
  std::ifstream in(from_env);
  const std::string env_contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(env_contents.find("G2") == std::string::npos);
  ::unsetenv(cli::kCacheEnv);

  // A warm cache gives the same answer.
  const auto cold = run({"--cache", from_flag.string(), "depth", "G2", "3"});
  const auto warm = run({"--cache", from_flag.string(), "depth", "G2", "3"});
  CHECK(cold.out == warm.out);
}

TEST_CASE("deterministic output") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"fusion-table", "B2", "2"}, {"trace", "G2", "2", "--floor", "5"},
        {"tower", "A2", "2", "--floors", "5"}, {"smatrix", "G2", "2"}, {"verify", "--types", "A1", "--levels", "1..2"}}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("verify scope") {
  const auto ok = run({"verify", "--types", "A1,A2,B2,C3,G2", "--levels", "1..3"});
  CHECK(ok.code == 0);
  CHECK(ok.parsed()["pass"] == true);

  const auto e8 = run({"verify", "--types", "E8", "--levels", "1..2"});
  const auto levels = e8.parsed()["results"][0]["levels"];
  REQUIRE(levels.size() == 2);
  for (int l = 1; l <= 2; ++l) {
    const auto& checks = levels[static_cast<std::size_t>(l - 1)]["checks"];
    const auto it = std::find_if(checks.begin(), checks.end(), [](const json& c) { return c["name"] == "depth_bounds"; });
    REQUIRE(it != checks.end());
    CHECK((*it)["detail"].get<std::string>().find(", " + std::to_string(l / 2) + "]") != std::string::npos);
  }
  CHECK(e8.code == (e8.parsed()["pass"] == true ? 0 : 1));

  CHECK(run({"verify", "--types", "", "--levels", "1..2"}).code == 2);
  CHECK(run({"verify", "--types", "A1", "--levels", "3..1"}).code == 2);
  CHECK(run({"verify", "--types", "A1", "--levels", "x"}).code == 2);
}
