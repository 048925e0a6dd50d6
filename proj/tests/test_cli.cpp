#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "gerrycircle/cli.hpp"
#include "gerrycircle/io.hpp"

using namespace gerrycircle;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "gerrycircle_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

const std::string fixtures = GERRYCIRCLE_FIXTURES;

}  // namespace

TEST_CASE("exact --n 2") {
  const auto r = run({"exact", "--n", "2"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["n"] == 2);
  CHECK(doc["p"] == "1/16");
  CHECK(r.err.find("manifest: ") == 0);
}

TEST_CASE("exact --n-range emits csv") {
  const auto r = run({"exact", "--n-range", "1:3"});
  CHECK(r.code == 0);
  CHECK(r.out == "n,p_decimal,p_fraction\n1,0.25,1/4\n2,0.0625,1/16\n3,0.34375,11/32\n");
  CHECK(run({"exact", "--n-range", "3:1"}).code == 2);
  CHECK(run({"exact", "--n", "2", "--n-range", "1:3"}).code == 2);
}

TEST_CASE("constants --route closed") {
  const auto r = run({"constants", "--route", "closed"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.0414238321664));
  CHECK(run({"constants", "--route", "nope"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  auto r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"simulate", "--k", "2", "--n", "3"}).code == 2);
  CHECK(run({"simulate", "--k", "2", "--n", "0", "--trials", "5", "--seed", "1"}).code == 2);
  CHECK(run({"compactness", "--polygon", "/nonexistent.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("simulate is reproducible and thread independent") {
  const auto a = run({"simulate", "--k", "2", "--n", "15", "--trials", "3000", "--seed", "9"});
  const auto b = run({"--threads", "3", "simulate", "--k", "2", "--n", "15", "--trials", "3000", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("d,count,frequency\n", 0) == 0);
}

TEST_CASE("manifest replay reproduces the output") {
  const auto dir = scratch_dir();
  const std::string manifest = (dir / "m.json").string();
  const std::string csv = (dir / "sim.csv").string();
  const auto first = run({"simulate", "--k", "3", "--n", "7", "--trials", "2000", "--seed", "4", "--out", csv,
                          "--manifest-out", manifest});
  REQUIRE(first.code == 0);
  const auto doc = json::parse(read_file(manifest));
  CHECK(doc["seed"] == 4);
  CHECK(doc["subcommand"] == "simulate");
  const std::string digest = doc["outputs"][csv];
  CHECK(digest == fnv1a64_hex(read_file(csv)));
  std::filesystem::remove(csv);

  const std::string manifest2 = (dir / "m2.json").string();
  REQUIRE(run({"--manifest", manifest, "--manifest-out", manifest2}).code == 0);
  CHECK(fnv1a64_hex(read_file(csv)) == digest);
  CHECK(json::parse(read_file(manifest2))["outputs"] == doc["outputs"]);
}

TEST_CASE("enumerate json") {
  const auto r = run({"enumerate", "--k", "2", "--n", "1"});
  const auto doc = json::parse(r.out);
  CHECK(doc["probabilities"] == json::array({"1/4", "1/2", "1/4"}));
}

TEST_CASE("compactness of the unit square fixture") {
  const auto r = run({"compactness", "--polygon", fixtures + "/unit_square.json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["polsby_popper"].get<double>() == doctest::Approx(0.785398163397));
  CHECK(doc["inertia"].get<double>() == doctest::Approx(1.0 / 6));
}

TEST_CASE("walk and converge") {
  const auto dir = scratch_dir();
  auto r = run({"walk", "--steps", "10", "--trials", "1000", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("steps,trials,successes", 0) == 0);
  const std::string svg = (dir / "conv.svg").string();
  r = run({"converge", "--n-list", "1,5,25", "--trials", "500", "--seed", "2", "--svg", svg});
  CHECK(r.code == 0);
  CHECK(read_file(svg).find("<svg") == 0);
  CHECK(run({"converge", "--n-list", "1,x", "--trials", "5", "--seed", "2"}).code == 2);
}

TEST_CASE("verify-geometry passes") {
  const auto r = run({"verify-geometry", "--sides", "4096"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("splitline writes plan, assignments and map") {
  const auto dir = scratch_dir();
  const std::string out = (dir / "plan.json").string(), csv = (dir / "assign.csv").string(),
                    svg = (dir / "plan.svg").string();
  const auto r = run({"splitline", "--points", fixtures + "/near_even_clusters.csv", "--polygon",
                      fixtures + "/unit_square.json", "--k", "4", "--angles", "36", "--beam", "2", "--seed", "3",
                      "--out", out, "--assignments", csv, "--svg", svg});
  REQUIRE(r.code == 0);
  const auto plan = json::parse(read_file(out));
  CHECK(plan["districts"].size() == 4);
  CHECK(plan["max_imbalance"].get<double>() <= 0.005);
  CHECK(read_file(csv).rfind("point,district\n", 0) == 0);
  CHECK(read_file(svg).find("<path") != std::string::npos);
}
