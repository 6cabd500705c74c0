#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dtlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("DTLAB_TEST_TMP");
  const fs::path dir = fs::path(env ? env : fs::temp_directory_path() / "dtlab_cli_tests") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST_CASE("moment prints exact coefficients and trace") {
  const Outcome o = run({"moment", "*1*1"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j.at("trace") == "2/3");
  CHECK(j.at("word") == "*1*1");
  CHECK(json::parse(run({"moment", "*1"}).out).at("trace") == "1/2");
  const json empty = json::parse(run({"moment", ""}).out);
  CHECK(empty.at("moment") == "1");
  CHECK(empty.at("trace") == "1");
  CHECK(json::parse(run({"moment", "11"}).out).at("moment") == "0");
}

TEST_CASE("moment with coefficients") {
  // E(T^* x T) = alpha21(x) = x^2/2, trace 1/6.
  const Outcome o = run({"moment", "*1", "--coeffs", R"([["0","1"],["1"]])"});
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out).at("trace") == "1/6");
  CHECK(run({"moment", "*1", "--coeffs", R"([["1"]])"}).code == 2);
}

TEST_CASE("oracle agrees with the engine") {
  const Outcome o = run({"oracle", "*1*1"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j.at("oracle") == "2/3");
  CHECK(j.at("pass") == true);
  const Outcome csv = run({"oracle", "**11", "--format", "csv"});
  CHECK(csv.out == "word,pairings,oracle,engine,pass\n**11,1,1/6,1/6,true\n");
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run({"moment", "*1", "--bogus"}).code == 2);
  CHECK(run({"moment", "x1"}).code == 2);
  CHECK(run({"simulate", "--n", "0"}).code == 2);
  CHECK(run({"concentration", "--n", "4"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"simulate", "--format", "xml"}).code == 2);
  const fs::path dir = scratch("errors");
  write(dir / "bad.json", R"({"mode":"dt","unknown_key":1})");
  CHECK(run({"simulate", "--config", (dir / "bad.json").string()}).code == 2);
  write(dir / "broken.json", "{not json");
  CHECK(run({"simulate", "--config", (dir / "broken.json").string()}).code == 2);
  CHECK(run({"angle", "--config", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("numerical aborts exit 3") {
  const fs::path dir = scratch("numerical");
  write(dir / "angle.json", R"({"lemma62":{"N":16,"trials":1,"K":1,"adaptive_k":false}})");
  const Outcome o = run({"angle", "--config", (dir / "angle.json").string()});
  CHECK(o.code == 3);
  CHECK(o.err.find("experiments.truncation") != std::string::npos);
}

TEST_CASE("help lists every flag and exits 0") {
  for (const std::string cmd : {"simulate", "hs", "angle"}) {
    const Outcome o = run({cmd, "--help"});
    CHECK(o.code == 0);
    for (const char* flag : {"--seed", "--n", "--trials", "--out", "--format", "--config"}) {
      CAPTURE(cmd);
      CAPTURE(flag);
      CHECK(o.out.find(flag) != std::string::npos);
    }
  }
  const Outcome top = run({"--help"});
  CHECK(top.code == 0);
  for (const char* cmd : {"moment", "oracle", "simulate", "hs", "angle", "concentration", "replay"}) {
    CHECK(top.out.find(cmd) != std::string::npos);
  }
}

TEST_CASE("simulate is deterministic in its seed") {
  const Outcome a = run({"simulate", "--n", "4", "--seed", "0"});
  const Outcome b = run({"simulate", "--n", "4", "--seed", "0"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"simulate", "--n", "4", "--seed", "1"}).out != a.out);
}

TEST_CASE("--out writes report, companion and manifest; replay reproduces it") {
  const fs::path dir = scratch("replay");
  const std::string out = (dir / "sim.json").string();
  REQUIRE(run({"simulate", "--n", "16", "--trials", "3", "--seed", "5", "--out", out}).code == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out + ".csv"));
  const json manifest = json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest.at("command") == "simulate");
  CHECK(manifest.at("seed") == 5);
  CHECK(manifest.at("config").at("N") == 16);
  CHECK(manifest.at("config").at("trials") == 3);
  CHECK(manifest.contains("timestamp"));
  CHECK(manifest.contains("version"));

  const Outcome verify = run({"replay", out + ".manifest.json", "--verify"});
  CHECK(verify.code == 0);
  const Outcome replayed = run({"replay", out + ".manifest.json"});
  CHECK(replayed.out == slurp(out));

  // A tampered report is detected.
  write(out, slurp(out) + " ");
  CHECK(run({"replay", out + ".manifest.json", "--verify"}).code == 1);
}

TEST_CASE("csv output with a json companion") {
  const fs::path dir = scratch("csv");
  const std::string out = (dir / "conc.csv").string();
  const Outcome o = run({"concentration", "--format", "csv", "--out", out});
  CHECK(o.code == 1);  // the ladder stops short of its target
  CHECK(slurp(out).rfind("N_param", 0) == 0);
  CHECK(json::parse(slurp(out + ".json")).contains("rungs"));
  CHECK(run({"replay", out + ".manifest.json", "--verify"}).code == 0);
  CHECK(run({"replay", out + ".manifest.json"}).code == 1);
}

TEST_CASE("hs on an explicit matrix") {
  const fs::path dir = scratch("hs");
  write(dir / "hs.json", R"({"mode":"matrix",
    "matrix":{"rows":3,"cols":3,"re":[[0.5,1,0],[0,2,1],[0,0,3]],"im":[[0,0,0],[0,0,0],[0,0,0]]},
    "regions":[{"annulus":{"r":0,"s":1}},{"annulus":{"r":0,"s":2.5}}]})");
  const Outcome o = run({"hs", "--config", (dir / "hs.json").string()});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j.at("projections")[0].at("rank") == 1);
  CHECK(j.at("projections")[1].at("rank") == 2);
  CHECK(j.at("lattice").at("pass") == true);
}

TEST_CASE("angle sections run independently") {
  const fs::path dir = scratch("angle");
  write(dir / "a.json", R"({"lemma61":{"N":32},"cor55":{"N":32,"trials":2}})");
  const Outcome o = run({"angle", "--config", (dir / "a.json").string(), "--seed", "3"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j.contains("lemma61"));
  CHECK(j.contains("cor55"));
  CHECK_FALSE(j.contains("lemma62"));
  write(dir / "b.json", R"({"lemma99":{}})");
  CHECK(run({"angle", "--config", (dir / "b.json").string()}).code == 2);
}
