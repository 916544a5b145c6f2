#include "doctest.h"

#include <sstream>

#include "wavebound/config.hpp"
#include "wavebound/errors.hpp"

using namespace wavebound;

TEST_CASE("parse_config reads key-value lines with comments") {
  std::istringstream in(R"(# example1 run
profile = example1
data = derivative-velocity   # v1 is the bump

t_end = 50
n_points = 4001
cfl = 0.8
archive = true
window_lo = 12.5
)");
  auto c = parse_config(in);
  CHECK(c.profile == "example1");
  CHECK(c.data == "derivative-velocity");
  CHECK(c.t_end == 50.0);
  CHECK(c.n_points == 4001);
  CHECK(c.cfl == 0.8);
  CHECK(c.archive);
  REQUIRE(c.window_lo.has_value());
  CHECK(*c.window_lo == 12.5);
  CHECK_FALSE(c.window_hi.has_value());
  CHECK(c.snapshots == 200);
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("unknown keys and malformed values name the field") {
  ExperimentConfig c;
  try {
    apply_setting(c, "speed", "2");
    FAIL("unknown key accepted");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "speed");
  }
  try {
    apply_setting(c, "n_points", "12.5");
    FAIL("fractional count accepted");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "n_points");
  }
  CHECK_THROWS_AS(apply_setting(c, "cfl", "fast"), ValidationError);
  CHECK_THROWS_AS(apply_setting(c, "archive", "maybe"), ValidationError);
  std::istringstream no_equals("profile example1\n");
  CHECK_THROWS_AS(parse_config(no_equals), ValidationError);
}

TEST_CASE("validate enforces documented ranges") {
  auto rejects = [](auto mutate, const char* field) {
    ExperimentConfig c;
    mutate(c);
    try {
      validate(c);
      return false;
    } catch (const ValidationError& e) {
      return e.field() == field;
    }
  };
  CHECK(rejects([](ExperimentConfig& c) { c.cfl = 1.1; }, "cfl"));
  CHECK(rejects([](ExperimentConfig& c) { c.cfl = 0.0; }, "cfl"));
  CHECK(rejects([](ExperimentConfig& c) { c.n_points = 4000; }, "n_points"));
  CHECK(rejects([](ExperimentConfig& c) { c.t_end = -1.0; }, "t_end"));
  CHECK(rejects([](ExperimentConfig& c) { c.snapshots = 0; }, "snapshots"));
  CHECK(rejects([](ExperimentConfig& c) { c.epsilon = -0.1; }, "epsilon"));
  CHECK(rejects([](ExperimentConfig& c) { c.scale = 0.0; }, "scale"));
  CHECK(rejects([](ExperimentConfig& c) { c.profile = "linear"; }, "profile"));
  CHECK(rejects([](ExperimentConfig& c) { c.data = "gaussian"; }, "data"));
  CHECK_NOTHROW(validate(ExperimentConfig{}));
}

TEST_CASE("to_key_values round-trips through apply_setting") {
  ExperimentConfig c;
  c.profile = "example3";
  c.data = "odd-velocity";
  c.scale = 0.7;
  c.shift = 1.0 / 3.0;
  c.t_end = 12.345;
  c.cfl = 0.85;
  c.window_hi = 9.5;
  ExperimentConfig back;
  for (const auto& [k, v] : to_key_values(c)) apply_setting(back, k, v);
  CHECK(back.profile == c.profile);
  CHECK(back.data == c.data);
  CHECK(back.scale == c.scale);
  CHECK(back.shift == c.shift);
  CHECK(back.t_end == c.t_end);
  CHECK(back.cfl == c.cfl);
  CHECK(back.window_hi == c.window_hi);
  CHECK_FALSE(back.window_lo.has_value());
}

TEST_CASE("load_config reports a missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/wavebound.cfg"), Error);
}
