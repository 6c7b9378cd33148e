#include "oracles.hpp"
#include "reeblab/ellipsoid.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/flow.hpp"
#include "reeblab/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace reeb;
using namespace reeb::ellipsoid;

namespace {
const Ellipsoid kE{1.0, std::sqrt(2.0), true};
}

TEST_CASE("orbits, actions and volume") {
  const auto [g1, g2] = ellipsoid_orbits(kE);
  CHECK(g1.action == 1.0);
  CHECK(g2.action == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(g1.rot_tau == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(g2.rot_tau == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(ellipsoid_volume(kE) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(ellipsoid_volume({2.0, 3.0, true}) == 6.0);
  CHECK_THROWS_AS(ellipsoid_orbits({1.0, 2.0, false}), InvalidInput);
}

TEST_CASE("line-class surface data") {
  auto rec = pq_surface_data(kE, {1, 1});
  CHECK(rec.area == doctest::Approx(0.41421356).epsilon(1e-8));
  auto rows = report_rows(kE, {1, 1});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].gamma_dot_sigma == doctest::Approx(0.29289322).epsilon(1e-8));
  CHECK(rows[1].gamma_dot_sigma == doctest::Approx(0.41421356).epsilon(1e-8));
  CHECK(*rows[0].rot_sigma == doctest::Approx(-0.29289322).epsilon(1e-8));
  CHECK(*rows[1].rot_sigma == doctest::Approx(0.41421356).epsilon(1e-8));

  rec = pq_surface_data(kE, {1, 2});
  CHECK(rec.area == doctest::Approx(2 * std::sqrt(2.0) - 1).epsilon(1e-15));
  rows = report_rows(kE, {1, 2});
  CHECK(rows[0].gamma_dot_sigma == doctest::Approx(1.29289322).epsilon(1e-8));
  CHECK(rows[1].gamma_dot_sigma == doctest::Approx(1.82842712).epsilon(1e-8));
}

TEST_CASE("closed forms for general (a, b, p, q)") {
  for (auto [a, b] : {std::pair{1.0, std::sqrt(2.0)}, std::pair{2.0, 3.0 * std::sqrt(2.0)},
                      std::pair{1.0, 0.5 * (1 + std::sqrt(5.0))}}) {
    const Ellipsoid e{a, b, true};
    for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 3}}) {
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(p);
      CAPTURE(q);
      const auto rows = report_rows(e, {p, q});
      CHECK(*rows[0].rot_sigma == doctest::Approx(a / b - double(q) / p).epsilon(1e-14));
      CHECK(*rows[1].rot_sigma == doctest::Approx(b / a - double(p) / q).epsilon(1e-14));
      CHECK(rows[0].gamma_dot_sigma == doctest::Approx((b * q - a * p) / b).epsilon(1e-14));
      CHECK(rows[1].gamma_dot_sigma == doctest::Approx((b * q - a * p) / a).epsilon(1e-14));
      CHECK(std::abs(rows[0].ratio - rows[0].threshold) <= 1e-12);
      CHECK(std::abs(rows[1].ratio - rows[1].threshold) <= 1e-12);
    }
  }
}

TEST_CASE("disk surface") {
  const auto rows = report_rows(kE, {1, 1, SurfaceKind::Disk});
  CHECK(rows[0].gamma_dot_sigma == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(*rows[0].rot_sigma == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK_FALSE(rows[1].rot_sigma.has_value());
  CHECK(rows[1].gamma_dot_sigma == 1.0);
  CHECK(pq_surface_data(kE, {1, 1, SurfaceKind::Disk}).area == 1.0);
  for (const auto& r : rows) CHECK(r.ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("invalid surfaces") {
  CHECK_THROWS_AS(pq_surface_data({2.0, 1.0, true}, {1, 1}), InvalidInput);  // bq <= ap
  CHECK_THROWS_AS(pq_surface_data(kE, {2, 4}), InvalidInput);
  CHECK_THROWS_AS(pq_surface_data(kE, {0, 1}), InvalidInput);
}

TEST_CASE("crossing rates") {
  CHECK(torus_crossing_rate(kE, {1, 1}) == doctest::Approx(0.29289322).epsilon(1e-8));
  CHECK(torus_crossing_rate(kE, {1, 1, SurfaceKind::Disk}) ==
        doctest::Approx(0.70710678).epsilon(1e-8));
}

TEST_CASE("report csv columns") {
  std::ostringstream out;
  write_report_csv(out, report_rows(kE, {1, 1}));
  CHECK(out.str().rfind("orbit,action,rot_tau,rot_sigma,gamma_dot_sigma,ratio,threshold\n", 0) == 0);
}

TEST_CASE("chart fields match the exact flows") {
  const flow::Point x{0.3, 1.1, 0.4};
  const auto field = toric_chart_field(kE);
  const auto rk = oracle::rk4([&](const oracle::Vec3& y) { return field(y); }, x, 2.5, 2000);
  const auto ex = toric_flow_exact(kE, x, 2.5);
  for (int i = 0; i < 3; ++i) CHECK(rk[i] == doctest::Approx(ex[i]).epsilon(1e-10));
  for (int which : {1, 2}) {
    const auto tube = orbit_tube_field(kE, which);
    const flow::Point y{0.2, 0.1, -0.05};
    const auto a = oracle::rk4([&](const oracle::Vec3& z) { return tube(z); }, y, 1.7, 4000);
    const auto b = tube_flow_exact(kE, which, y, 1.7);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
  }
}

TEST_CASE("long trajectory crosses the (1,1) surface 58 or 59 times in time 200") {
  const auto section = toric_surface_section({1, 1});
  const auto run = flow::integrate(toric_chart_field(kE), {0.0, 0.5, 0.5}, 200.0, &section);
  CHECK((run.crossing_count == 58 || run.crossing_count == 59));
  CHECK(flow::empirical_frequency(run) == doctest::Approx(0.29289).epsilon(0.02));
}
