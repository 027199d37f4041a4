#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "relocate/cli.hpp"
#include "relocate/scenario_io.hpp"

using namespace relocate;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "relocate_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Everything after the config line; timings never appear there.
std::string body(const std::string& out) {
  return out.substr(out.find('\n') + 1);
}

const char* kTrivial =
    "object 0 30 20 3 6.5 target\n"
    "object 1 70 30 2.5 6\n";

}  // namespace

TEST_CASE("plan on a trivial scene") {
  const std::string path = write("trivial.txt", kTrivial);
  const Run r = cli({"plan", "--scenario", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.starts_with("# config {\"command\":\"plan\""));
  CHECK(r.out.find("# result status=done relocated=1 order=0 replans=0") != std::string::npos);
}

TEST_CASE("plan writes its artifacts") {
  const std::string path = write("trivial.txt", kTrivial);
  const fs::path dir = scratch("plan_out");
  fs::remove_all(dir);
  const Run r = cli({"plan", "--scenario", path, "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  for (const char* f : {"config.json", "events.log", "metrics.csv", "scenario.txt"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK(slurp(dir / "metrics.csv").starts_with("method,case,N,seed,success"));
  CHECK(slurp(dir / "config.json").find("\"method\": \"proposed\"") != std::string::npos);
}

TEST_CASE("plan with an all-fail table reports a planner failure") {
  const std::string path = write("trivial.txt", kTrivial);
  const std::string faults = write("all_fail.txt", "0 always\n1 always\n");
  const Run r = cli({"plan", "--scenario", path, "--oracle", "fault:" + faults});
  CHECK(r.code == kExitPlannerFail);
  CHECK(r.out.find("# result status=fail") != std::string::npos);
}

TEST_CASE("plan is reproducible") {
  for (const char* method : {"proposed", "distance", "vfh"}) {
    const std::vector<std::string> args{"plan", "--case", "II", "--n", "12", "--seed", "3",
                                        "--method", method, "--oracle", "randfault:0.3"};
    const Run a = cli(args);
    const Run b = cli(args);
    CHECK(a.code == b.code);
    CHECK(body(a.out) == body(b.out));
    CHECK(a.out == b.out);
  }
}

TEST_CASE("detour through the command line") {
  const std::string scene = write("detour.txt", write_scenario(fixture::detour()));
  const std::string faults = write("detour_faults.txt", "7 1\n");
  const Run r = cli({"plan", "--scenario", scene, "--oracle", "fault:" + faults});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("order=9,5,7 replans=1") != std::string::npos);
}

TEST_CASE("input errors") {
  CHECK(cli({}).code == kExitInputError);
  CHECK(cli({"fly"}).code == kExitInputError);
  CHECK(cli({"plan", "--scenario", "/nonexistent/scene.txt"}).code == kExitInputError);
  CHECK(cli({"plan", "--method", "astar"}).code == kExitInputError);
  CHECK(cli({"plan", "--oracle", "rrt"}).code == kExitInputError);
  CHECK(cli({"plan", "--n", "many"}).code == kExitInputError);
  CHECK(cli({"plan", "--grid-res", "0"}).code == kExitInputError);
  const std::string bad = write("bad.txt", "object 0 1 2\n");
  const Run r = cli({"plan", "--scenario", bad});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("timeout exit code") {
  const Run r = cli({"plan", "--n", "12", "--timeout-s", "1e-9"});
  CHECK(r.code == kExitTimeout);
  CHECK(r.out.find("# result status=timeout") != std::string::npos);
}

TEST_CASE("graph prints the adjacency and path") {
  const std::string scene = write("pocket.txt", write_scenario(fixture::pocket()));
  const Run r = cli({"graph", "--scenario", scene});
  CHECK(r.code == kExitOk);
  CHECK(body(r.out) == "R 2 3\n0 2\n1 3\n2 R 0 3\n3 R 1 2\n# path 2,0\n");
}

TEST_CASE("gen output parses back") {
  const Run r = cli({"gen", "--case", "III", "--n", "8", "--seed", "2"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  const Scenario sc = parse_scenario(in);
  CHECK(sc.objects.size() == 8);
  CHECK(sc.scenario_case == Case::III);
}

TEST_CASE("render") {
  const std::string empty = write("empty.txt", "workspace 90 45\n");
  const Run e = cli({"render", "--scenario", empty});
  CHECK(e.code == kExitOk);
  CHECK(e.out.find("class=\"object") == std::string::npos);

  const std::string scene = write("two_reveal.txt", write_scenario(fixture::two_reveal()));
  const fs::path dir = scratch("plan_two_reveal");
  fs::remove_all(dir);
  REQUIRE(cli({"plan", "--scenario", scene, "--out", dir.string()}).code == kExitOk);
  const fs::path frames = scratch("frames_two_reveal");
  fs::remove_all(frames);
  const Run f = cli({"render", "--scenario", scene, "--log", (dir / "events.log").string(),
                     "--out", frames.string()});
  CHECK(f.code == kExitOk);
  CHECK(fs::exists(frames / "frame_000.svg"));
  CHECK(fs::exists(frames / "frame_001.svg"));
  CHECK(cli({"render", "--scenario", scene, "--log", (dir / "events.log").string()}).code ==
        kExitInputError);
  CHECK(cli({"render", "--scenario", scene}).out == cli({"render", "--scenario", scene}).out);
}

TEST_CASE("batch prints a table") {
  const Run r = cli({"batch", "--case", "I", "--n", "8", "--reps", "2", "--methods",
                     "proposed,vfh", "--workers", "2"});
  CHECK(r.code == kExitOk);
  std::istringstream in(body(r.out));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(cli({"batch", "--n", "x"}).code == kExitInputError);
  const Run zero = cli({"batch", "--reps", "0"});
  CHECK(zero.code == kExitOk);
}

TEST_CASE("the installed binary uses the same exit codes") {
  const std::string path = write("trivial.txt", kTrivial);
  const std::string faults = write("all_fail.txt", "0 always\n1 always\n");
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  const std::string bin = RELOCATE_CLI_PATH;
  CHECK(status(bin + " plan --scenario " + path) == 0);
  CHECK(status(bin + " plan --scenario " + path + " --oracle fault:" + faults) == 2);
  CHECK(status(bin + " plan --scenario /nonexistent") == 4);
}
