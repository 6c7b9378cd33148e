#include "reeblab/ellipsoid.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/flow.hpp"
#include "reeblab/inflation.hpp"
#include "reeblab/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace reeb;
using flow::Point;

namespace {

flow::ChartVectorField rotation_field() {
  flow::ChartVectorField f;
  f.name = "rotation";
  f.velocity = [](const Point& x) { return Point{-x[1], x[0], 0.0}; };
  return f;
}

}  // namespace

TEST_CASE("adaptive integration follows an exact rotation") {
  const auto run = flow::integrate(rotation_field(), {1.0, 0.0, 0.0}, 10.0);
  CHECK(run.end_point[0] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));
  CHECK(run.end_point[1] == doctest::Approx(std::sin(10.0)).epsilon(1e-9));
  CHECK(run.total_time == doctest::Approx(10.0));
  CHECK_FALSE(run.exited_chart);
}

TEST_CASE("fixed-step propagation is fifth order") {
  const Point x{1.0, 0.0, 0.0};
  auto err = [&](int n) {
    const auto y = flow::integrate_fixed_step(rotation_field(), x, 4.0, n);
    return std::hypot(y[0] - std::cos(4.0), y[1] - std::sin(4.0));
  };
  const double order = std::log2(err(40) / err(80));
  CHECK(order == doctest::Approx(5.0).epsilon(0.1));
}

TEST_CASE("section events carry signs and are localized") {
  flow::Section sec;
  sec.value = [](const Point& x) { return x[1]; };  // y = 0
  const auto run = flow::integrate(rotation_field(), {1.0, 0.0, 0.0}, 3.0 * kPi + 0.1, &sec);
  REQUIRE(run.events.size() == 3);
  CHECK(run.events[0].time == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(run.events[0].sign == -1);
  CHECK(run.events[1].sign == 1);
  CHECK(run.crossing_count == -1);
  // Gate away the crossings on the negative x axis.
  sec.gate = [](const Point& x) { return x[0]; };
  const auto gated = flow::integrate(rotation_field(), {1.0, 0.0, 0.0}, 3.0 * kPi + 0.1, &sec);
  CHECK(gated.events.size() == 1);
}

TEST_CASE("leaving the chart ends the run") {
  flow::ChartVectorField f;
  f.velocity = [](const Point&) { return Point{1.0, 0.0, 0.0}; };
  f.inside = [](const Point& x) { return x[0] < 1.0; };
  const auto run = flow::integrate(f, {0.0, 0.0, 0.0}, 5.0);
  CHECK(run.exited_chart);
  CHECK(run.end_point[0] < 1.0);
}

TEST_CASE("periodic coordinates are wrapped") {
  flow::ChartVectorField f;
  f.periods = {1.0, 0.0, 0.0};
  f.velocity = [](const Point&) { return Point{1.0, 0.5, 0.0}; };
  const auto run = flow::integrate(f, {0.25, 0.0, 0.0}, 2.5);
  CHECK(run.end_point[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(run.end_point[1] == doctest::Approx(1.25).epsilon(1e-9));
  const auto d = f.difference({0.95, 0.0, 0.0}, {0.05, 0.0, 0.0});
  CHECK(d[0] == doctest::Approx(-0.1));
}

TEST_CASE("tube normal form: crossings of the very-nice surface at rate |rho - p/q|") {
  inflation::TubeChart tube;
  tube.T = 1.0;
  tube.rho = 0.7071;
  tube.p = 1;
  tube.q = 1;
  const auto field = inflation::model_tube_field(tube);
  const auto sec = inflation::tube_surface_section(tube);
  const auto run = flow::integrate(field, {0.0, 0.2, 0.3}, 100.0, &sec);
  CHECK(std::abs(flow::empirical_frequency(run)) == doctest::Approx(0.2929).epsilon(0.02));
  CHECK(std::abs(std::abs(run.crossing_count) - 29.29) <= 1.0);
}

TEST_CASE("gamma_1 of E(1, sqrt 2) refines to a period-1 orbit") {
  const ellipsoid::Ellipsoid e{1.0, std::sqrt(2.0), true};
  const auto field = ellipsoid::orbit_tube_field(e, 1);
  const auto orb = flow::refine_periodic_orbit(field, {0.3, 1e-3, -2e-3}, 1.03);
  CHECK(orb.period == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::hypot(orb.point[1], orb.point[2]) < 1e-8);
  CHECK_FALSE(orb.degenerate);
}

TEST_CASE("closed slab: every point returns after s0 + delta") {
  const auto profile = inflation::make_profile(1.0, 0.1, 0.5);
  auto chart = inflation::lambda_delta_chart(inflation::SlabChart::OverSigma0, profile);
  chart.reeb.periods = {profile.s0, 0.0, 0.0};
  const auto orb = flow::refine_periodic_orbit(chart.reeb, {0.0, 0.3, 0.2}, 1.05);
  CHECK(orb.period == doctest::Approx(1.1).epsilon(1e-9));
  CHECK(orb.degenerate);  // a whole family of orbits
}

TEST_CASE("Newton failure is reported") {
  flow::ChartVectorField f;
  f.velocity = [](const Point&) { return Point{1.0, 0.0, 0.0}; };  // no periodic orbits
  flow::PeriodicOrbitOptions opts;
  opts.max_iterations = 5;
  CHECK_THROWS_AS(flow::refine_periodic_orbit(f, {0.0, 0.0, 0.0}, 1.0, opts), NumericalFailure);
}

TEST_CASE("empirical frequency and csv writers") {
  flow::Section sec;
  sec.value = [](const Point& x) { return std::sin(x[0]); };
  flow::ChartVectorField f;
  f.velocity = [](const Point&) { return Point{1.0, 0.0, 0.0}; };
  std::ostringstream traj;
  flow::TrajectoryCsv writer(traj);
  const auto run = flow::integrate(f, {0.1, 0.0, 0.0}, 10.0, &sec, {}, writer.observer());
  CHECK(std::abs(run.crossing_count) <= 3);
  CHECK(run.events.size() == 3);
  CHECK(flow::empirical_frequency(run, 10.0) == doctest::Approx(run.crossing_count / 10.0));
  CHECK(traj.str().rfind("time,x0,x1,x2,section\n", 0) == 0);
  std::ostringstream ev;
  flow::write_events_csv(ev, run);
  CHECK(ev.str().rfind("time,sign\n", 0) == 0);
  CHECK_THROWS_AS(flow::empirical_frequency(run, 0.0), InvalidInput);
}
