#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "relocate/scenario_io.hpp"

using namespace relocate;

namespace {

Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse a scenario in centimeters") {
  const Scenario sc = parse(
      "# two cans\n"
      "case II\n"
      "workspace 90 45\n"
      "robot 45 -10 5 0.5\n"
      "camera 45 -20 30\n"
      "object 0 20 30 2.5 6.5 target\n"
      "object 3 60 10 3 6 hidden   # behind something\n");
  CHECK(sc.scenario_case == Case::II);
  CHECK(sc.workspace.length == doctest::Approx(0.9));
  CHECK(sc.workspace.robot_radius == doctest::Approx(0.05));
  CHECK(sc.workspace.safety_margin == doctest::Approx(0.005));
  CHECK(sc.camera.height == doctest::Approx(0.3));
  REQUIRE(sc.objects.size() == 2);
  CHECK(sc.objects[0].is_target);
  CHECK(sc.objects[0].center.x == doctest::Approx(0.2));
  CHECK(sc.objects[0].radius == doctest::Approx(0.025));
  CHECK(sc.objects[1].id == 3);
  CHECK(sc.objects[1].hidden);
  CHECK_FALSE(sc.objects[1].is_target);
}

TEST_CASE("round trip keeps every field") {
  for (const Scenario& sc : {fixture::pocket(), fixture::detour(), fixture::two_reveal(),
                             fixture::case3_single_occluder()}) {
    const std::string text = write_scenario(sc);
    const Scenario back = parse(text);
    CHECK(back.scenario_case == sc.scenario_case);
    REQUIRE(back.objects.size() == sc.objects.size());
    for (std::size_t k = 0; k < sc.objects.size(); ++k) {
      CHECK(back.objects[k].id == sc.objects[k].id);
      CHECK(back.objects[k].center.x == doctest::Approx(sc.objects[k].center.x).epsilon(1e-14));
      CHECK(back.objects[k].center.y == doctest::Approx(sc.objects[k].center.y).epsilon(1e-14));
      CHECK(back.objects[k].radius == doctest::Approx(sc.objects[k].radius).epsilon(1e-14));
      CHECK(back.objects[k].is_target == sc.objects[k].is_target);
      CHECK(back.objects[k].hidden == sc.objects[k].hidden);
    }
    CHECK(write_scenario(back) == text);
  }
}

TEST_CASE("empty scene parses") {
  const Scenario sc = parse("workspace 90 45\n");
  CHECK(sc.objects.empty());
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line("case II\nworkspace 90\n") == 2);
  CHECK(error_line("object 0 1 2 3 4 target\nobject 0 5 6 3 4\n") == 2);
  CHECK(error_line("object 0 1 2 3 4\n") == 0);
  CHECK(error_line("object 0 1 2 3 4 target\nobject 1 5 6 3 4 target\n") == 0);
  CHECK(error_line("frobnicate 3\n") == 1);
  CHECK(error_line("case V\n") == 1);
  CHECK(error_line("camera 45 -20 30 0.1\n") == 1);
  CHECK(error_line("object 0 1 2 x 4 target\n") == 1);
  CHECK(error_line("object 0 1 2 3 4 target shiny\n") == 1);
  CHECK(error_line("object -2 1 2 3 4 target\n") == 1);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scene.txt"), ParseError);
}
