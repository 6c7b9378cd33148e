#include "reeblab/core_model.hpp"
#include "reeblab/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace reeb;
using namespace reeb::model;

namespace {
const double kA = 1.0, kB = std::sqrt(2.0);
}

TEST_CASE("rot_sigma subtracts the surface framing") {
  // gamma_1 of the (1,1) line-class surface: covered once against the Reeb direction.
  BoundaryIncidence g1{{"gamma_1", kA, kA / kB, true}, 1, -1, 1};
  CHECK(rot_sigma(g1) == doctest::Approx(kA / kB - 1.0).epsilon(1e-15));
  CHECK(rot_sigma(g1) == doctest::Approx(-0.29289322).epsilon(1e-8));
  BoundaryIncidence g2{{"gamma_2", kB, kB / kA, true}, 1, 1, 1};
  CHECK(rot_sigma(g2) == doctest::Approx(0.41421356).epsilon(1e-8));
}

TEST_CASE("boundary intersection number m q rot_sigma") {
  BoundaryIncidence g1{{"gamma_1", kA, kA / kB, true}, 1, -1, 1};
  CHECK(gamma_dot_sigma_boundary(g1) == doctest::Approx((kB - kA) / kB).epsilon(1e-15));
  CHECK(gamma_dot_sigma_boundary(g1) == doctest::Approx(0.29289322).epsilon(1e-8));
  BoundaryIncidence disk{{"gamma_1", kA, kA / kB, true}, 1, 1, 0};
  CHECK(gamma_dot_sigma_boundary(disk) == doctest::Approx(0.70710678).epsilon(1e-8));
  // Two boundary components double the count.
  BoundaryIncidence twice = disk;
  twice.m = 2;
  CHECK(gamma_dot_sigma_boundary(twice) == doctest::Approx(2 * kA / kB));
}

TEST_CASE("frequency ratio") {
  CHECK(frequency_ratio(0.41421356237309515, 1.4142135623730951) ==
        doctest::Approx(0.29289322).epsilon(1e-8));
  CHECK(frequency_ratio(1.0, kB) == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK_THROWS_AS(frequency_ratio(1.0, 0.0), InvalidInput);
}

TEST_CASE("validation rejects malformed incidences") {
  BoundaryIncidence b{{"g", 1.0, 0.5, true}, 1, 0, 1};
  CHECK_THROWS_AS(validate(b), InvalidInput);  // q = 0
  b.q = 2;
  b.p_tau = 4;
  CHECK_THROWS_AS(validate(b), InvalidInput);  // gcd 2
  b.p_tau = 1;
  b.m = 0;
  CHECK_THROWS_AS(validate(b), InvalidInput);
  b.m = 1;
  b.orbit.action = -1.0;
  CHECK_THROWS_AS(validate(b), InvalidInput);
  // rot_sigma of the wrong sign for the declared degree is not admissible.
  BoundaryIncidence wrong{{"g", 1.0, 0.2, true}, 1, 1, 1};
  CHECK_THROWS_AS(gamma_dot_sigma_boundary(wrong), InvalidInput);
  SurfaceRecord s;
  s.area = 0.0;
  CHECK_THROWS_AS(validate(s), InvalidInput);
}

TEST_CASE("main inequality on the line-class data is an equality for both orbits") {
  const double area = kB - kA, vol = kA * kB;
  const auto rep = evaluate_main_inequality(
      {{"gamma_1", (kB - kA) / kB, kA, true}, {"gamma_2", (kB - kA) / kA, kB, true}}, area, vol);
  CHECK(rep.threshold == doctest::Approx(0.29289322).epsilon(1e-8));
  CHECK(rep.sup_ratio == doctest::Approx(rep.threshold).epsilon(1e-15));
  CHECK(rep.frequency_bound_holds);
  CHECK_FALSE(rep.boundary_hypothesis_holds);
  for (const auto& row : rep.rows) CHECK(row.versus_threshold == Comparison::EqualWithinTol);
  CHECK(rep.to_text().find("gamma_2") != std::string::npos);
}

TEST_CASE("main inequality on the disk data: equality, gamma_2 meets the interior") {
  const auto rep = evaluate_main_inequality(
      {{"gamma_1", kA / kB, kA, true}, {"gamma_2", 1.0, kB, false}}, kA, kA * kB);
  CHECK(rep.threshold == doctest::Approx(1.0 / kB));
  CHECK(rep.interior_bound_witnessed);
  CHECK_FALSE(rep.boundary_hypothesis_holds);
}

TEST_CASE("strict cases are not folded into equality") {
  CHECK(compare(1.0, 1.0 + 1e-13, 1e-12) == Comparison::EqualWithinTol);
  CHECK(compare(1.0, 1.0 + 1e-9, 1e-12) == Comparison::Below);
  CHECK(compare(1.1, 1.0, 1e-12) == Comparison::Above);
  const auto rep = evaluate_main_inequality({{"a", 0.1, 1.0, true}, {"b", 3.0, 1.0, false}}, 1.0, 2.0);
  CHECK(rep.boundary_hypothesis_holds);
  CHECK(rep.interior_bound_witnessed);
  const auto none = evaluate_main_inequality({}, 1.0, 2.0);
  CHECK(none.empty);
  CHECK_FALSE(none.frequency_bound_holds);
}
