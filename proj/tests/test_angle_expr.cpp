#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "mdbench/angle_expr.hpp"
#include "mdbench/errors.hpp"
#include "testutil.hpp"

using namespace mdbench;
using testutil::kPi;

TEST_CASE("plain literals evaluate to themselves") {
  CHECK(parse_angle_expression("0") == 0.0);
  CHECK(parse_angle_expression("1") == 1.0);
  CHECK(parse_angle_expression("2.5") == 2.5);
  CHECK(parse_angle_expression(".5") == 0.5);
  CHECK(parse_angle_expression("1e-3") == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(parse_angle_expression("  42  ") == 42.0);
}

TEST_CASE("pi is the only named constant") {
  CHECK(parse_angle_expression("pi") == kPi);
  CHECK(parse_angle_expression(" pi ") == kPi);
  CHECK_THROWS_AS(parse_angle_expression("tau"), ValidationError);
  CHECK_THROWS_AS(parse_angle_expression("Pi"), ValidationError);
  CHECK_THROWS_AS(parse_angle_expression("pie"), ValidationError);
}

TEST_CASE("the experiment-file form 2 * pi evaluates exactly") {
  CHECK(parse_angle_expression("2 * pi") == 6.283185307179586);
  CHECK(parse_angle_expression("2*pi") == 2.0 * kPi);
}

TEST_CASE("operators follow standard precedence and associativity") {
  CHECK(parse_angle_expression("1 + 2 * 3") == 7.0);
  CHECK(parse_angle_expression("(1 + 2) * 3") == 9.0);
  CHECK(parse_angle_expression("2 - 3 - 4") == -5.0);
  CHECK(parse_angle_expression("16 / 4 / 2") == 2.0);
  CHECK(parse_angle_expression("1 - 2 / 4") == 0.5);
  CHECK(parse_angle_expression("pi/2 + pi/2") == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(parse_angle_expression("3 * pi / 2") == doctest::Approx(1.5 * kPi).epsilon(1e-15));
}

TEST_CASE("unary minus applies to factors and nests") {
  CHECK(parse_angle_expression("-1") == -1.0);
  CHECK(parse_angle_expression("-pi/4") == doctest::Approx(-kPi / 4).epsilon(1e-15));
  CHECK(parse_angle_expression("--2") == 2.0);
  CHECK(parse_angle_expression("3 * -2") == -6.0);
  CHECK(parse_angle_expression("-(1 + 2)") == -3.0);
}

TEST_CASE("parentheses nest arbitrarily") {
  CHECK(parse_angle_expression("((((pi))))") == kPi);
  CHECK(parse_angle_expression("2 * (pi / (1 + 1))") == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("syntax errors name a position") {
  for (const std::string bad : {"", "   ", "2 +", "* 3", "2 2", "(1", "1)", "2 ** 3", "4 @ 2"}) {
    CHECK_THROWS_AS(parse_angle_expression(bad), ValidationError);
  }
  try {
    parse_angle_expression("2 * pj");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("position 5") != std::string::npos);
  }
  try {
    parse_angle_expression("(1 + 2");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("division by zero is rejected") {
  CHECK_THROWS_AS(parse_angle_expression("1 / 0"), ValidationError);
  CHECK_THROWS_AS(parse_angle_expression("pi / (2 - 2)"), ValidationError);
  try {
    parse_angle_expression("1 / 0");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("division by zero") != std::string::npos);
  }
}

TEST_CASE("three-point grid over a full turn hits 0, pi and 2 pi") {
  const std::vector<double> grid = angle_grid(0.0, 2.0 * kPi, 3);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == kPi);
  CHECK(grid[2] == 2.0 * kPi);
}

TEST_CASE("single-point grid requires equal endpoints") {
  const std::vector<double> grid = angle_grid(kPi, kPi, 1);
  REQUIRE(grid.size() == 1);
  CHECK(grid[0] == kPi);
  CHECK_THROWS_AS(angle_grid(0.0, kPi, 1), ValidationError);
}

TEST_CASE("five-point grid over a half turn is the quarter ladder") {
  const std::vector<double> grid = angle_grid(0.0, kPi, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(grid[2] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(grid[3] == doctest::Approx(3.0 * kPi / 4).epsilon(1e-15));
  CHECK(grid[4] == kPi);
}

TEST_CASE("grid endpoints are reproduced exactly") {
  const std::vector<double> grid = angle_grid(0.1, 5.9, 7);
  CHECK(grid.front() == 0.1);
  CHECK(grid.back() == 5.9);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] > grid[i - 1]);
  }
}

TEST_CASE("invalid step counts are rejected") {
  CHECK_THROWS_AS(angle_grid(0.0, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(angle_grid(0.0, 1.0, -3), ValidationError);
}
