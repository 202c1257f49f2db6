#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const fs::path kDir = fs::temp_directory_path() / "lienard_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(LIENARD_CLI) + " " + args + " 2>" + (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const std::string& name) { return (kDir / name).string(); }

void write(const std::string& name, const std::string& text) { std::ofstream(kDir / name) << text; }

std::string slurp(const std::string& name) {
  std::ifstream in(kDir / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read(const std::string& name) { return Json::parse(slurp(name)); }

struct Setup {
  Setup() {
    fs::create_directories(kDir);
    write("vdp.json", R"({"f": {"poly": [-1, 0, 1]}, "g": {"poly": [0, 1]}})");
    write("asym.json", R"({"F": {"poly": [0, -2, 1, 1]}, "g": {"poly": [0, 1]}})");
    write("mirror.json", R"({"F": {"poly": [0, -2, -1, 1]}, "g": {"poly": [0, 1]}})");
    write("cubic.json", R"({"F": {"poly": [0, 0, 1, 1]}, "g": {"poly": [0, 1]}})");
    write("center.json", R"({"F": {"poly": [0]}, "g": {"poly": [0, 1]}})");
    write("bad.json", "{\"f\": [1, 2");
  }
};
const Setup setup;

}  // namespace

TEST_CASE("analyze") {
  REQUIRE(run("analyze --system " + path("vdp.json") + " --out " + path("a.json")) == 0);
  const Json a = read("a.json");
  CHECK(a["schema"] == 1);
  CHECK(a["report"]["verdict"] == "UniqueStableCycle");

  CHECK(run("analyze --system " + path("bad.json")) == 2);
  CHECK(run("analyze --system " + path("missing.json")) == 2);
  CHECK(run("analyze") == 2);

  REQUIRE(run("counterexample --eps 1 --out " + path("dl.json")) == 0);
  REQUIRE(run("analyze --system " + path("dl.json") + " --out " + path("dla.json")) == 0);
  CHECK(read("dla.json")["report"]["verdict"] == "AtMostOneCrossingCycle");
}

TEST_CASE("identical runs give identical bytes") {
  REQUIRE(run("cycles --system " + path("vdp.json") + " --out " + path("c1.json")) == 0);
  REQUIRE(run("cycles --system " + path("vdp.json") + " --jobs 3 --out " + path("c2.json")) == 0);
  CHECK(slurp("c1.json") == slurp("c2.json"));
}

TEST_CASE("cycles") {
  REQUIRE(run("cycles --system " + path("vdp.json") + " --csv " + path("orbit.csv") + " --out " + path("v.json")) == 0);
  const Json v = read("v.json");
  REQUIRE(v["search"]["cycles"].size() == 1);
  CHECK(v["search"]["cycles"][0]["stability"] == "stable");
  CHECK(v["search"]["crossing_checks"][0]["pass"] == true);
  CHECK(slurp("orbit.csv").rfind("cycle,x,y\n0,", 0) == 0);

  REQUIRE(run("counterexample --eps 0.01 --A 0 --B 0 --out " + path("dl01.json")) == 0);
  REQUIRE(run("cycles --system " + path("dl01.json") + " --range 0.05:1.5 --out " + path("three.json")) == 0);
  CHECK(read("three.json")["search"]["cycles"].size() == 3);

  REQUIRE(run("counterexample --eps 0.01 --cycles --out " + path("chained.json")) == 0);
  CHECK(read("chained.json")["search"]["cycles"].size() == 3);

  REQUIRE(run("cycles --system " + path("center.json") + " --out " + path("none.json")) == 0);
  CHECK(read("none.json")["search"]["cycles"].empty());

  CHECK(run("cycles --system " + path("vdp.json") + " --range 2:1") == 2);
  CHECK(run("cycles --system " + path("vdp.json") + " --range oops") == 2);
}

TEST_CASE("deform and closure") {
  REQUIRE(run("deform --system " + path("asym.json") + " --kind g_lambda --out " + path("g.json")) == 0);
  const Json g = read("g.json");
  CHECK(std::abs(g["parameter"].get<double>() - 0.25) <= 1e-12);
  CHECK(g["certificate"]["verdict"] == "UniqueStableCycle");

  // The outcome is itself a valid system document.
  REQUIRE(run("analyze --system " + path("g.json") + " --out " + path("ga.json")) == 0);
  CHECK(read("ga.json")["report"]["verdict"] == "UniqueStableCycle");
  REQUIRE(run("cycles --system " + path("g.json") + " --out " + path("gc.json")) == 0);
  CHECK(read("gc.json")["search"]["cycles"].size() == 1);

  CHECK(run("deform --system " + path("mirror.json") + " --kind F_scale") == 3);
  CHECK(slurp("stderr.txt").find("G(x1) < G(x2)") != std::string::npos);
  CHECK(run("deform --system " + path("asym.json") + " --kind sideways") == 2);

  REQUIRE(run("deform --system " + path("cubic.json") + " --kind poly --out " + path("p.json")) == 0);
  CHECK(read("p.json")["certificate"]["verdict"] == "UniqueStableCycle");
  REQUIRE(run("deform --system " + path("vdp.json") + " --kind tilt --out " + path("t.json")) == 0);
  CHECK(read("t.json")["kind"] == "tilt");
}

TEST_CASE("simulate and average") {
  REQUIRE(run("simulate --system " + path("center.json") + " --x0 1 --t-max 6.283185307179586 --csv " +
              path("traj.csv") + " --out " + path("s.json")) == 0);
  const Json s = read("s.json");
  CHECK(std::hypot(s["end"]["x"].get<double>() - 1.0, s["end"]["y"].get<double>()) <= 1e-8);
  CHECK(slurp("traj.csv").rfind("t,x,y\n", 0) == 0);

  REQUIRE(run("average --out " + path("avg.json")) == 0);
  const Json a = read("avg.json");
  REQUIRE(a["prediction"]["cycles"].size() == 3);
  const double radii[] = {1.0 / 3.0, 2.0 / 3.0, 1.0};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(a["prediction"]["cycles"][i]["radius"].get<double>() - radii[i]) <= 1e-9);
}
