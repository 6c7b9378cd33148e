#include "reeblab/calabi.hpp"
#include "reeblab/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace reeb;
using namespace reeb::calabi;

namespace {

// For a twist map with the standard primitive d f = r^2 tau'(r) dr (the density is 1/pi),
// so f(r) = theta_B - integral_r^1 s^2 tau'(s) ds on the unit disk.
double twist_action_oracle(const TwistProfile& t, double r) {
  return t.tau(1.0) - oracle::simpson([&](double s) { return s * s * t.tau_prime(s); }, r, 1.0);
}

}  // namespace

TEST_CASE("ideal twist: f_beta = r^4 - 1 and Cal = -2/3") {
  const auto model = twist_map(ideal_twist());
  FBetaReport rep;
  const auto f = compute_f_beta(model, standard_primitive(model), &rep);
  for (double r : {0.0, 0.2, 0.5, 0.9, 1.0})
    CHECK(f({r, 1.3}) == doctest::Approx(std::pow(r, 4) - 1.0).epsilon(1e-12));
  CHECK(rep.max_path_difference <= 1e-9);
  CHECK(rep.boundary_B_value == doctest::Approx(0.0));
  CHECK(std::abs(calabi_invariant(f) + 2.0 / 3.0) <= 1e-10);

  const auto flipped = twist_map(ideal_twist(-1.0));
  const auto g = compute_f_beta(flipped, standard_primitive(flipped));
  CHECK(std::abs(calabi_invariant(g) - 2.0 / 3.0) <= 1e-10);
}

TEST_CASE("area preservation and boundary rigidity") {
  const auto ideal = check_model(twist_map(ideal_twist()));
  CHECK(ideal.area_preserving);
  CHECK_FALSE(ideal.boundary_rigid);
  const auto smooth = check_model(twist_map(smoothed_twist()));
  CHECK(smooth.area_preserving);
  CHECK(smooth.boundary_rigid);
}

TEST_CASE("smoothed twist against a quadrature oracle") {
  const auto prof = smoothed_twist();
  const auto model = twist_map(prof);
  const auto f = compute_f_beta(model, standard_primitive(model));
  const double c = f({0.0, 0.0});
  for (double r : {0.1, 0.4, 0.8}) CHECK(f({r, 2.0}) - std::pow(r, 4) == doctest::Approx(c).epsilon(1e-9));
  for (double r : {0.82, 0.85, 0.88, 0.95})
    CHECK(f({r, 0.7}) == doctest::Approx(twist_action_oracle(prof, r)).epsilon(1e-9));
  // Cal = integral of f against the unit-mass area form.
  const double cal = oracle::simpson([&](double r) { return 2 * r * twist_action_oracle(prof, r); }, 0.0, 1.0, 4000);
  CHECK(calabi_invariant(f) == doctest::Approx(cal).epsilon(1e-9));
}

TEST_CASE("periodic orbits of the ideal twist") {
  const auto model = twist_map(ideal_twist());
  const auto f = compute_f_beta(model, standard_primitive(model));
  auto search = find_orbits_radial(model, 3);
  REQUIRE(search.orbits.size() == 8);
  assign_actions(search.orbits, f);
  for (const auto& o : search.orbits) {
    CHECK(o.points.size() == static_cast<std::size_t>(o.d));
    CHECK(orbit_residual(model, o) <= 1e-9);
    // Each orbit lies on the circle tau(r) = -p/q, where f = r^4 - 1.
    const double r = o.points[0].r;
    CHECK(o.mean_action == doctest::Approx(std::pow(r, 4) - 1.0).epsilon(1e-10));
  }
  CHECK(search.orbits[1].points[0].r == doctest::Approx(std::sqrt(0.5)));
  CHECK(search.orbits[2].mean_action == doctest::Approx(-0.9375));

  const auto report = theorem_calabi_check(f, calabi_invariant(f), search.orbits);
  CHECK(report.hypothesis);
  CHECK(report.conclusion_witnessed);
  CHECK(report.min_mean_action <= -2.0 / 3.0);
}

TEST_CASE("Newton refinement recovers a period-2 orbit") {
  const auto model = twist_map(ideal_twist());
  const auto res = find_orbits_newton(model, {{{0.52, 0.4}, 2}});
  REQUIRE(res.orbits.size() == 1);
  CHECK(res.orbits[0].points[0].r == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("changing the primitive by an exact form changes nothing") {
  const auto model = twist_map(smoothed_twist());
  auto orbits = find_orbits_radial(model, 2).orbits;
  const auto beta = standard_primitive(model);
  const auto rep = primitive_perturbation_check(model, beta, cosine_perturbation(), orbits);
  CHECK(rep.calabi_deviation <= 1e-9);
  CHECK(rep.max_action_deviation <= 1e-9);
  const auto bump = primitive_perturbation_check(model, beta, random_bump(17), orbits);
  CHECK(bump.calabi_deviation <= 1e-8);
  CHECK(check_primitive(model, perturbed_primitive(model, beta, cosine_perturbation())).ok);
}

TEST_CASE("annulus: zero flux, rigid rotation and descent") {
  const auto twist = twist_map(ideal_twist(), Domain::Annulus, 0.3);
  const auto flux = compute_flux(twist, standard_primitive(twist));
  REQUIRE(flux.periods.size() == 1);
  CHECK(std::abs(flux.periods[0]) <= 1e-10);
  CHECK(flux.zero);

  const auto rigid = twist_map(constant_twist((std::sqrt(5.0) - 1.0) / 2.0), Domain::Annulus, 0.3);
  CHECK(find_orbits_radial(rigid, 3).orbits.empty());

  const auto d = descent_check(twist, 3);
  CHECK(d.calabi_annulus == doctest::Approx(d.calabi_disk).epsilon(1e-9));
  CHECK(d.max_action_difference <= 1e-9);
}

TEST_CASE("inverse map is dual and lifts shift by integers") {
  const auto model = twist_map(smoothed_twist());
  const auto dual = duality_check(model);
  CHECK(dual.max_pointwise_sum <= 1e-9);
  CHECK(std::abs(dual.calabi_sum) <= 1e-9);
  const auto beta = standard_primitive(model);
  const double cal = calabi_invariant(compute_f_beta(model, beta));
  for (int n : {-2, 1, 3}) {
    const auto shifted = shift_lift(model, n);
    CHECK(std::abs(calabi_invariant(compute_f_beta(shifted, beta)) - (cal + n)) <= 1e-14);
  }
}

TEST_CASE("spline twists") {
  const auto prof = spline_twist({0.0, 0.3, 0.6, 1.0}, {-1.5, -1.2, -0.4, 0.0});
  CHECK(prof.tau(0.3) == doctest::Approx(-1.2));
  CHECK(prof.tau_prime(0.0) == doctest::Approx(0.0));
  for (double r = 0.0; r < 1.0; r += 0.01) CHECK(prof.tau_prime(r) >= 0.0);
  CHECK_THROWS_AS(spline_twist({0.0, 0.5, 1.0}, {0.0, 0.1, 0.2}), InvalidInput);
  const auto model = twist_map(prof);
  const auto f = compute_f_beta(model, standard_primitive(model));
  CHECK(f({0.45, 0.0}) == doctest::Approx(twist_action_oracle(prof, 0.45)).epsilon(1e-8));
}
