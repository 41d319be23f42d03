#include <cmath>

#include "doctest.h"
#include "spreadnet/errors.hpp"
#include "spreadnet/quadrature.hpp"

using namespace spreadnet;

TEST_SUITE("quadrature") {

TEST_CASE("spec validation") {
  QuadratureSpec ok;
  CHECK_NOTHROW(ok.validate());
  QuadratureSpec bad_rel{1e-10, 1e-13, 2000};
  CHECK_THROWS_AS(bad_rel.validate(), ValidationError);
  QuadratureSpec bad_abs{0.0, 1e-9, 2000};
  CHECK_THROWS_AS(bad_abs.validate(), ValidationError);
  QuadratureSpec bad_sub{1e-10, 1e-9, 49};
  CHECK_THROWS_AS(bad_sub.validate(), ValidationError);
}

TEST_CASE("polynomials integrate to machine precision") {
  // A single 15-point panel is exact through degree 22, so these finish
  // without any subdivision.
  auto r1 = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(5e-15));
  CHECK(r1.subdivisions == 0);

  auto r2 = integrate([](double x) { return std::pow(x, 13); }, 0.0, 1.0);
  CHECK(r2.value == doctest::Approx(1.0 / 14.0).epsilon(5e-13));

  auto r3 = integrate([](double x) { return std::pow(x, 21) - 3.0 * x; },
                      -1.0, 2.0);
  // exact: (2^22 - 1)/22 - 3*(4-1)/2
  CHECK(r3.value == doctest::Approx((std::pow(2.0, 22) - 1.0) / 22.0 - 4.5)
                        .epsilon(5e-13));

  auto r4 = integrate([](double) { return 2.5; }, 3.0, 7.0);
  CHECK(r4.value == doctest::Approx(10.0).epsilon(1e-15));

  CHECK(integrate([](double x) { return x; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("smooth transcendental integrands") {
  auto sine = integrate([](double x) { return std::sin(x); }, 0.0,
                        std::acos(-1.0));
  CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-12));

  auto gauss = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
  CHECK(gauss.value == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-11));

  // Oscillatory enough to force subdivision.
  auto osc = integrate([](double x) { return std::cos(20.0 * x); }, 0.0, 1.0);
  CHECK(osc.value == doctest::Approx(std::sin(20.0) / 20.0).epsilon(1e-10));
  CHECK(osc.subdivisions > 0);
}

TEST_CASE("integrable endpoint singularity") {
  QuadratureSpec loose{1e-7, 1e-7, 2000};
  auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                     loose);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("budget exhaustion throws instead of returning garbage") {
  QuadratureSpec tight{1e-14, 1e-12, 50};
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight),
      QuadratureError);
}

TEST_CASE("semi-infinite integrals") {
  auto decay = integrate_to_infinity([](double x) { return std::exp(-x); },
                                     0.0, 1.0);
  CHECK(decay.value == doctest::Approx(1.0).epsilon(1e-10));

  auto rayleigh = integrate_to_infinity(
      [](double x) { return x * std::exp(-0.5 * x * x); }, 0.0, 1.0);
  CHECK(rayleigh.value == doctest::Approx(1.0).epsilon(1e-10));

  // Shifted lower limit: integral_2^inf e^-x = e^-2.
  auto shifted = integrate_to_infinity([](double x) { return std::exp(-x); },
                                       2.0, 1.0);
  CHECK(shifted.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));

  // A poorly matched scale still converges, just with more work.
  auto coarse = integrate_to_infinity([](double x) { return std::exp(-x); },
                                      0.0, 50.0);
  CHECK(coarse.value == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(
      integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 0.0),
      ValidationError);
  CHECK_THROWS_AS(
      integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, -1.0),
      ValidationError);
}

}  // TEST_SUITE
