#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wavebound/analysis.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/numerics.hpp"
#include "wavebound/oracles.hpp"
#include "wavebound/solver.hpp"

using namespace wavebound;

namespace {

std::vector<double> second_difference(const std::vector<double>& f) {
  std::vector<double> d(f.size(), 0.0);
  for (std::size_t j = 1; j + 1 < f.size(); ++j) d[j] = f[j + 1] - 2.0 * f[j] + f[j - 1];
  return d;
}

double l2_error(const std::vector<double>& a, const std::vector<double>& b, double h) {
  std::vector<double> diff(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) diff[j] = a[j] - b[j];
  return std::sqrt(numerics::trapezoid_sq(diff, h));
}

WaveState march(const InitialData& data, const CoefficientProfile& profile, const GridSpec& grid,
                std::size_t steps) {
  auto state = first_step(data, profile, grid);
  std::vector<double> scratch;
  while (state.step_index < steps) advance(state, profile, grid, scratch);
  return state;
}

}  // namespace

TEST_CASE("init_grid sizes the domain past the cone") {
  InitialData bump_data(DataKind::bump);
  SUBCASE("unit speed") {
    auto g = init_grid(bump_data, profiles::constant(1.0), 10.0, 0.9, 2001);
    CHECK(g.half_width >= 11.0 + 2.0 * g.h);
    CHECK(g.h == doctest::Approx(2.0 * g.half_width / 2000.0));
    CHECK(g.cfl <= 0.9 + 1e-12);
    CHECK(static_cast<double>(g.n_steps) * g.dt == doctest::Approx(10.0).epsilon(1e-14));
  }
  SUBCASE("example1 doubles the reach") {
    auto g = init_grid(bump_data, profiles::example1(), 10.0, 0.9, 2001);
    CHECK(g.a_max == doctest::Approx(2.0));
    CHECK(g.half_width >= 21.0 + 2.0 * g.h);
    CHECK(g.a_max * g.dt / g.h <= 0.9 + 1e-12);
  }
  SUBCASE("step count is a multiple of the requested factor") {
    auto g = init_grid(bump_data, profiles::example2a(), 7.3, 0.9, 1001, {}, 40);
    CHECK(g.n_steps % 40 == 0);
  }
  SUBCASE("preconditions") {
    auto one = profiles::constant(1.0);
    CHECK_THROWS_AS(init_grid(bump_data, one, 10.0, 1.2, 2001), ValidationError);
    CHECK_THROWS_AS(init_grid(bump_data, one, 10.0, 0.0, 2001), ValidationError);
    CHECK_THROWS_AS(init_grid(bump_data, one, -1.0, 0.9, 2001), ValidationError);
    CHECK_THROWS_AS(init_grid(bump_data, one, 10.0, 0.9, 2000), ValidationError);
    SolverLimits tight;
    tight.max_points = 1000;
    CHECK_THROWS_AS(init_grid(bump_data, one, 10.0, 0.9, 2001, tight), CapacityError);
  }
}

TEST_CASE("first_step follows the Taylor start") {
  auto one = profiles::constant(1.0);
  SUBCASE("zero data") {
    InitialData zero([](double) { return 0.0; }, [](double) { return 0.0; }, -1.0, 1.0, "zero");
    auto grid = init_grid(zero, one, 1.0, 0.9, 201);
    auto s = first_step(zero, one, grid);
    for (double v : s.u_curr) CHECK(v == 0.0);
  }
  SUBCASE("bump displacement") {
    InitialData d(DataKind::bump);
    auto grid = init_grid(d, one, 1.0, 0.9, 201);
    auto s = first_step(d, one, grid);
    auto u0 = d.sample_u0(grid);
    auto d2 = second_difference(u0);
    const double r2 = std::pow(grid.dt / grid.h, 2);
    for (std::size_t j = 0; j < u0.size(); ++j)
      CHECK(s.u_curr[j] == doctest::Approx(u0[j] + 0.5 * r2 * d2[j]).epsilon(1e-14));
    CHECK(s.t == grid.dt);
    CHECK(s.step_index == 1);
  }
  SUBCASE("bump velocity") {
    InitialData d(DataKind::bump_velocity);
    auto grid = init_grid(d, one, 1.0, 0.9, 201);
    auto s = first_step(d, one, grid);
    auto u1 = d.sample_u1(grid);
    for (std::size_t j = 0; j < u1.size(); ++j) CHECK(s.u_curr[j] == grid.dt * u1[j]);
  }
}

TEST_CASE("a zero state stays zero") {
  auto one = profiles::constant(1.0);
  InitialData zero([](double) { return 0.0; }, [](double) { return 0.0; }, -1.0, 1.0, "zero");
  auto grid = init_grid(zero, one, 1.0, 0.9, 101);
  auto s = march(zero, one, grid, 20);
  for (double v : s.u_curr) CHECK(v == 0.0);
}

TEST_CASE("step matches advance") {
  InitialData d(DataKind::odd_velocity);
  auto p = profiles::example3();
  auto grid = init_grid(d, p, 2.0, 0.9, 401);
  auto s = first_step(d, p, grid);
  auto by_value = step(s, p, grid);
  std::vector<double> scratch;
  advance(s, p, grid, scratch);
  CHECK(by_value.u_curr == s.u_curr);
  CHECK(by_value.step_index == 2);
}

TEST_CASE("bump splits into two travelling halves") {
  auto one = profiles::constant(1.0);
  InitialData d(DataKind::bump);
  auto grid = init_grid(d, one, 3.0, 0.9, 2001);
  auto s = march(d, one, grid, grid.n_steps);
  CHECK(s.t == doctest::Approx(3.0).epsilon(1e-14));
  auto exact = oracles::dalembert_field(d, grid, s.t);
  CHECK(l2_error(s.u_curr, exact, grid.h) < 1e-4);
}

TEST_CASE("separated halves carry half the norm") {
  auto one = profiles::constant(1.0);
  InitialData d(DataKind::bump);
  auto grid = init_grid(d, one, 5.0, 0.9, 4001);
  auto s = march(d, one, grid, grid.n_steps);
  const double expected = 0.5 * oracles::bump_l2_sq().value;
  CHECK(l2_norm_sq(s.u_curr, grid) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("field is exactly zero outside the discrete cone") {
  auto p = profiles::example1();
  InitialData d(DataKind::derivative_velocity);
  auto grid = init_grid(d, p, 5.0, 0.9, 801);
  auto state = first_step(d, p, grid);
  std::vector<double> scratch;
  const double L = d.support_radius();
  while (state.step_index < grid.n_steps) {
    const double reach = L + static_cast<double>(state.step_index) * grid.h;
    for (std::size_t j = 0; j < grid.n_points; ++j)
      if (std::abs(grid.x(j)) > reach + 1e-12 * grid.h) REQUIRE(state.u_curr[j] == 0.0);
    advance(state, p, grid, scratch);
  }
}

TEST_CASE("constant speed conserves the discrete energy") {
  for (double c : {1.0, 2.0}) {
    auto p = profiles::constant(c);
    RunSetup setup{p, InitialData(DataKind::odd_velocity)};
    setup.t_end = 50.0;
    setup.n_points = c == 1.0 ? 2001 : 4001;
    setup.snapshots = 50;
    auto result = run(setup);
    const auto& recs = result.series.records;
    const double e0 = recs.front().E_u;
    double drift = 0.0;
    for (const auto& r : recs) drift = std::max(drift, std::abs(r.E_u - e0) / e0);
    CAPTURE(c);
    CHECK(drift < 1e-3);
  }
}

TEST_CASE("energy drift is second order in dt") {
  auto p = profiles::constant(1.0);
  auto drift_at = [&](std::size_t n) {
    RunSetup setup{p, InitialData(DataKind::odd_velocity)};
    setup.t_end = 10.0;
    setup.n_points = n;
    setup.snapshots = 20;
    auto recs = run(setup).series.records;
    double drift = 0.0;
    for (const auto& r : recs) drift = std::max(drift, std::abs(r.E_u - recs.front().E_u));
    return drift;
  };
  const double coarse = drift_at(801), fine = drift_at(1601);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("reconstruction identity holds to second order") {
  auto p = profiles::example2b();
  auto err_at = [&](std::size_t n) {
    RunSetup setup{p, InitialData(DataKind::odd_velocity)};
    setup.t_end = 10.0;
    setup.n_points = n;
    setup.snapshots = 20;
    return max_reconstruction_error(run(setup).series);
  };
  const double coarse = err_at(1001), fine = err_at(2001);
  CHECK(coarse < 5e-3);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("evolved antiderivative matches the reconstructed one") {
  RunSetup setup{profiles::example3(), InitialData(DataKind::derivative_velocity)};
  setup.t_end = 8.0;
  setup.n_points = 1001;
  setup.snapshots = 16;
  setup.evolve_antiderivative = true;
  auto result = run(setup);
  REQUIRE(result.antiderivative_gap.has_value());
  CHECK(*result.antiderivative_gap < 1e-10);
}

TEST_CASE("run at zero horizon records only the initial state") {
  RunSetup setup{profiles::constant(1.0), InitialData(DataKind::odd_velocity)};
  setup.t_end = 0.0;
  setup.n_points = 401;
  auto result = run(setup);
  REQUIRE(result.series.records.size() == 1);
  CHECK(result.series.records[0].t == 0.0);
  CHECK(result.grid.n_steps == 0);
}

TEST_CASE("snapshots are evenly spaced and deterministic") {
  RunSetup setup{profiles::example2a(), InitialData(DataKind::odd_velocity)};
  setup.t_end = 6.0;
  setup.n_points = 801;
  setup.snapshots = 30;
  auto a = run(setup);
  auto b = run(setup);
  REQUIRE(a.series.records.size() == 31);
  for (std::size_t k = 0; k < a.series.records.size(); ++k) {
    CHECK(a.series.records[k].t == doctest::Approx(0.2 * static_cast<double>(k)).epsilon(1e-12));
    CHECK(a.series.records[k].l2_u_sq == b.series.records[k].l2_u_sq);
    CHECK(a.series.records[k].E_v == b.series.records[k].E_v);
  }
}

TEST_CASE("snapshot_steps") {
  CHECK(snapshot_steps(0, 10) == std::vector<std::size_t>{0});
  CHECK(snapshot_steps(10, 5) == std::vector<std::size_t>{0, 2, 4, 6, 8, 10});
  auto many = snapshot_steps(3, 10);
  CHECK(many == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("archive lists each snapshot left to right") {
  std::ostringstream archive;
  RunSetup setup{profiles::constant(1.0), InitialData(DataKind::bump)};
  setup.t_end = 1.0;
  setup.n_points = 101;
  setup.snapshots = 2;
  setup.archive = &archive;
  auto result = run(setup);
  std::istringstream in(archive.str());
  std::string line;
  int headers = 0;
  while (std::getline(in, line)) {
    if (line.rfind("t=", 0) == 0) {
      ++headers;
      std::getline(in, line);
      std::istringstream values(line);
      double v;
      std::size_t count = 0;
      while (values >> v) ++count;
      CHECK(count == result.grid.n_points);
    }
  }
  CHECK(headers == 3);
}

TEST_CASE("an unstable step blows up with the step index") {
  auto one = profiles::constant(1.0);
  InitialData d(DataKind::bump);
  auto grid = init_grid(d, one, 1.0, 0.9, 201);
  grid.dt *= 3.0;
  auto state = first_step(d, one, grid);
  std::vector<double> scratch;
  bool caught = false;
  try {
    for (int k = 0; k < 100000; ++k) advance(state, one, grid, scratch);
  } catch (const BlowUpError& e) {
    caught = true;
    CHECK(e.step_index() > 1);
  }
  CHECK(caught);
}
