#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "wavebound/coefficients.hpp"
#include "wavebound/errors.hpp"

using namespace wavebound;

namespace {

CoefficientProfile builtin(int i) {
  switch (i) {
    case 0: return profiles::constant(1.0);
    case 1: return profiles::example1();
    case 2: return profiles::example2a();
    case 3: return profiles::example2b();
    default: return profiles::example3();
  }
}

}  // namespace

TEST_CASE("evaluate returns the defining values") {
  auto one = profiles::constant(1.0).evaluate(5.0);
  CHECK(one.a == 1.0);
  CHECK(one.a_prime == 0.0);

  auto e2 = profiles::example2a().evaluate(0.0);
  CHECK(e2.a == 2.0);
  CHECK(e2.a_prime == -1.0);

  auto e1 = profiles::example1().evaluate(0.0);
  CHECK(e1.a == 1.0);
  CHECK(e1.a_prime == 0.0);
}

TEST_CASE("evaluate rejects negative time and non-finite values") {
  CHECK_THROWS_AS(profiles::example1().evaluate(-1.0), ValidationError);
  CoefficientProfile bad(
      "blows", [](double t) { return t > 150.0 ? std::numeric_limits<double>::infinity() : 1.0; },
      [](double) { return 0.0; });
  CHECK_THROWS_AS(bad.evaluate(200.0), ProfileError);
}

TEST_CASE("construction rejects a non-positive speed") {
  CHECK_THROWS_AS(CoefficientProfile("dips", [](double t) { return 1.0 - 0.1 * t; },
                                     [](double) { return -0.1; }),
                  ProfileError);
  CHECK_THROWS_AS(profiles::constant(0.0), ProfileError);
}

TEST_CASE("by_name resolves every built-in") {
  CHECK(profiles::by_name("const:2.5").speed(3.0) == 2.5);
  CHECK(profiles::by_name("example1").name() == "example1");
  CHECK(profiles::by_name("example2b").speed(0.0) == 2.0);
  CHECK_THROWS_AS(profiles::by_name("const:abc"), ValidationError);
  CHECK_THROWS_AS(profiles::by_name("quartic"), ValidationError);
}

TEST_CASE("derivative matches a centered difference of a") {
  for (int i = 0; i < 5; ++i) {
    auto p = builtin(i);
    CAPTURE(p.name());
    for (double t : {0.3, 1.0, 2.5, 7.0, 30.0}) {
      const double h = 1e-4;
      const double fd = (p.speed(t + h) - p.speed(t - h)) / (2 * h);
      CHECK(std::abs(fd - p.rate(t)) < 1e-7);
    }
  }
}

TEST_CASE("classify matches the analytic regimes") {
  SUBCASE("example1 is nondecreasing with supremum 2") {
    auto f = classify(profiles::example1(), 200.0);
    CHECK(f.a2_holds);
    CHECK_FALSE(f.a3_holds);
    CHECK(f.a_m == doctest::Approx(2.0));
  }
  SUBCASE("example2b is nonincreasing with inf 1 and sup 2") {
    auto f = classify(profiles::example2b(), 200.0);
    CHECK(f.a3_holds);
    CHECK_FALSE(f.a2_holds);
    CHECK(f.A0 == doctest::Approx(1.0));
    CHECK(f.a_m == doctest::Approx(2.0));
  }
  SUBCASE("example3 has integrable variation and inf at least 1") {
    auto f = classify(profiles::example3(), 400.0);
    CHECK(f.a4_holds);
    CHECK_FALSE(f.a2_holds);
    CHECK_FALSE(f.a3_holds);
    CHECK(f.A0 >= 1.0);
    CHECK(f.a_m >= f.A0);
    REQUIRE(f.tv_tail.has_value());
    CHECK(*f.tv_tail > 0.0);
  }
  SUBCASE("a constant speed satisfies every assumption") {
    auto f = classify(profiles::constant(1.0), 50.0);
    CHECK(f.a1_holds);
    CHECK(f.a2_holds);
    CHECK(f.a3_holds);
    CHECK(f.a4_holds);
    CHECK(f.a_m == 1.0);
    CHECK(f.A0 == 1.0);
    CHECK(f.tv_total == 0.0);
  }
  CHECK_THROWS_AS(classify(profiles::constant(1.0), 0.0), ValidationError);
  CHECK_THROWS_AS(classify(profiles::constant(1.0), 10.0, 8), ValidationError);
}

TEST_CASE("a2 and a3 together only for constant speeds") {
  for (int i = 0; i < 5; ++i) {
    auto p = builtin(i);
    auto f = classify(p, 100.0);
    CAPTURE(p.name());
    CHECK((f.a2_holds && f.a3_holds) == p.is_constant());
    if (f.a3_holds || f.a4_holds) {
      CHECK(f.a_m >= f.A0);
      CHECK(f.A0 > 0.0);
    }
  }
}

TEST_CASE("built-ins stay positive and below their supremum") {
  for (int i = 0; i < 5; ++i) {
    auto p = builtin(i);
    const double a_m = classify(p, 100.0).a_m;
    for (int k = 0; k <= 2000; ++k) {
      const double a = p.speed(0.05 * k);
      CHECK(a > 0.0);
      CHECK(a <= a_m + 1e-12);
    }
  }
}

TEST_CASE("w_log_ratio") {
  CHECK(w_log_ratio(profiles::constant(1.0), 17.0) == 0.0);
  CHECK(w_log_ratio(profiles::example1(), 1e6) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  const double expected = std::log((1.0 + std::exp(-1.0)) / 2.0);
  CHECK(w_log_ratio(profiles::example2a(), 1.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(w_log_ratio_quadrature(profiles::example2a(), 1.0) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("w_log_ratio closed form agrees with quadrature on [0, 50]") {
  for (int i = 0; i < 5; ++i) {
    auto p = builtin(i);
    for (double t : {0.0, 0.5, 3.0, 12.0, 50.0})
      CHECK(std::abs(w_log_ratio(p, t) - w_log_ratio_quadrature(p, t)) <= 1e-8);
  }
}

TEST_CASE("total_variation") {
  CHECK(total_variation(profiles::constant(1.0), 30.0) == 0.0);
  CHECK(total_variation(profiles::example2a(), 60.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double tv100 = total_variation(profiles::example3(), 100.0);
  const double tv200 = total_variation(profiles::example3(), 200.0);
  CHECK(std::isfinite(tv100));
  // |a'| ~ |cos t| / (1+t)^2 far out, whose mean over a period is 2/pi.
  const double between = 2.0 / std::numbers::pi * (1.0 / 101.0 - 1.0 / 201.0);
  CHECK(tv200 - tv100 == doctest::Approx(between).epsilon(0.02));
  CHECK(std::abs(tv200 - tv100) <= *profiles::example3().tail_bound(100.0));
  CHECK_THROWS_AS(total_variation(profiles::example3(), 0.0), ValidationError);
}

TEST_CASE("total_variation of a monotone profile is the change in speed") {
  for (auto p : {profiles::example1(), profiles::example2a(), profiles::example2b()}) {
    for (double T : {0.5, 4.0, 25.0}) {
      CAPTURE(p.name());
      CAPTURE(T);
      CHECK(std::abs(total_variation(p, T) - std::abs(p.speed(T) - p.a0())) <= 1e-10);
    }
  }
}

TEST_CASE("tail bounds dominate the truncated variation") {
  for (auto p : {profiles::example2a(), profiles::example2b(), profiles::example3()}) {
    const double T = 20.0;
    auto tail = p.tail_bound(T);
    REQUIRE(tail.has_value());
    CHECK(total_variation(p, 400.0) - total_variation(p, T) <= *tail + 1e-9);
  }
}

TEST_CASE("max_speed uses samples and hints") {
  CHECK(max_speed(profiles::example1(), 5.0) == doctest::Approx(2.0));
  CHECK(max_speed(profiles::example2a(), 5.0) == doctest::Approx(2.0));
  CHECK(max_speed(profiles::constant(3.0), 1.0) == 3.0);
}
