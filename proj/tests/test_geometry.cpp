#include "doctest.h"
#include "spreadnet/geometry.hpp"

using namespace spreadnet;

TEST_SUITE("geometry") {

TEST_CASE("torus delta folds across the seam") {
  CHECK(torus_delta(1900.0, 2000.0) == 100.0);
  CHECK(torus_delta(-1900.0, 2000.0) == 100.0);
  CHECK(torus_delta(999.0, 2000.0) == 999.0);
  CHECK(torus_delta(1000.0, 2000.0) == 1000.0);  // exactly half stays put
  CHECK(torus_delta(0.0, 2000.0) == 0.0);
  CHECK(torus_delta(2000.0, 2000.0) == 0.0);
}

TEST_CASE("squared distance under both metrics") {
  Vec2 a{0.0, 0.0}, b{1999.0, 0.0};
  CHECK(squared_distance(a, b, DistanceModel::Torus, 2000.0) == 1.0);
  CHECK(squared_distance(a, b, DistanceModel::Bounded, 2000.0) ==
        1999.0 * 1999.0);
  Vec2 c{100.0, 1950.0}, d{1950.0, 100.0};
  // dx folds to 150, dy folds to 150 on the torus.
  CHECK(squared_distance(c, d, DistanceModel::Torus, 2000.0) ==
        150.0 * 150.0 * 2.0);
  CHECK(squared_distance(c, c, DistanceModel::Bounded, 2000.0) == 0.0);
}

TEST_CASE("wrap maps onto [0, side)") {
  CHECK(wrap(2100.0, 2000.0) == 100.0);
  CHECK(wrap(-100.0, 2000.0) == 1900.0);
  CHECK(wrap(2000.0, 2000.0) == 0.0);
  CHECK(wrap(0.0, 2000.0) == 0.0);
  CHECK(wrap(4100.0, 2000.0) == 100.0);
  CHECK(wrap(150.0, 2000.0) == 150.0);
}

TEST_CASE("reflect_fold bounces off both walls") {
  CHECK(reflect_fold(2100.0, 2000.0) == 1900.0);
  CHECK(reflect_fold(-100.0, 2000.0) == 100.0);
  CHECK(reflect_fold(4100.0, 2000.0) == 100.0);  // two bounces
  CHECK(reflect_fold(2000.0, 2000.0) == 2000.0);
  CHECK(reflect_fold(0.0, 2000.0) == 0.0);
  CHECK(reflect_fold(-2100.0, 2000.0) == 1900.0);
  CHECK(reflect_fold(500.0, 2000.0) == 500.0);
}

}  // TEST_SUITE
