#include "reeblab/errors.hpp"
#include "reeblab/inflation.hpp"
#include "reeblab/numerics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace reeb;
using namespace reeb::inflation;

namespace {

TubeChart reference_tube() {
  TubeChart t;
  t.T = 1.0;
  t.rho = std::sqrt(0.5);
  t.r0 = 0.5;
  t.p = 0;
  t.q = 1;
  return t;
}

}  // namespace

TEST_CASE("plateau bump and cutoff satisfy their structural conditions") {
  const auto zeta = plateau_bump(1.0);
  CHECK_NOTHROW(validate_bump(zeta, 1.0));
  CHECK(oracle::simpson(zeta.value, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(zeta(0.5) == 1.0);
  CHECK(zeta(0.05) == 0.0);
  CHECK(zeta.derivative(0.25) == doctest::Approx(oracle::derivative(zeta.value, 0.25)).epsilon(1e-7));

  const auto beta = smooth_cutoff(0.5);
  CHECK_NOTHROW(validate_cutoff(beta, 0.5));
  CHECK(beta(0.1) == 0.0);
  CHECK(beta(0.45) == 1.0);
  // A ramp built for r0 = 0.5 is too steep for r0 = 1.
  CHECK_THROWS_AS(validate_cutoff(beta, 1.0), InvalidInput);
}

TEST_CASE("dbar solves the traversal identity and round-trips") {
  const auto zeta = plateau_bump(1.0);
  const double dbar = solve_delta_bar(zeta, 1.0, 0.1);
  const double mass = oracle::simpson([&](double s) { return std::exp(dbar * zeta(s)); }, 0.0, 1.0);
  CHECK(mass == doctest::Approx(1.1).epsilon(1e-10));
  // The plateau has mass s0/2 but is not a step, so dbar exceeds the step value ln(1.2).
  CHECK(dbar > std::log(1.2));
  CHECK(std::abs(solve_delta_bar(zeta, 1.0, delta_from_delta_bar(zeta, 1.0, 0.05)) - 0.05) <= 1e-10);
  CHECK(solve_delta_bar(zeta, 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(solve_delta_bar(zeta, 1.0, -0.1), InvalidInput);
}

TEST_CASE("tube chart Reeb field: no radial drift near the orbit") {
  const auto tube = reference_tube();
  const auto profile = make_profile(1.0, 0.1, 0.5);
  const auto chart = lambda_delta_chart(SlabChart::OverBoundaryTube, profile, &tube);
  for (double s : {0.2, 0.3, 0.5, 0.7}) {
    for (double r : {0.01, 0.1, 0.16}) {
      const auto v = chart.reeb({s, 0.3, r});
      CHECK(v[2] == 0.0);
      CHECK(v[1] == 0.0);
      CHECK(v[0] == doctest::Approx(1.0));
    }
    // Past the ramp only the ds and dr components survive.
    const auto v = chart.reeb({s, 0.3, 0.45});
    CHECK(v[1] == doctest::Approx(0.0));
    CHECK(v[0] == doctest::Approx(std::exp(-profile.delta_bar * profile.zeta(s))).epsilon(1e-12));
  }
}

TEST_CASE("traversal over Sigma_0 takes s0 + delta and the half maps agree") {
  const auto profile = make_profile(1.0, 0.1, 0.5);
  for (auto [x, y] : {std::pair{0.0, 0.0}, {0.3, 0.2}, {-0.5, 0.1}}) {
    CHECK(std::abs(slab_traversal_time(profile, x, y) - 1.1) <= 1e-8);
    const auto fwd = half_traversal(profile, x, y, false);
    const auto bwd = half_traversal(profile, x, y, true);
    CHECK(fwd.time == doctest::Approx(bwd.time).epsilon(1e-9));
    CHECK(fwd.exit[1] == doctest::Approx(bwd.exit[1]).epsilon(1e-9));
    CHECK(fwd.exit[2] == doctest::Approx(bwd.exit[2]).epsilon(1e-9));
    // The first return is the identity on Sigma_0.
    const auto full = slab_traversal(profile, x, y);
    CHECK(full.exit[1] == doctest::Approx(x).epsilon(1e-9));
    CHECK(full.exit[2] == doctest::Approx(y).epsilon(1e-9));
  }
  // Near the orbit the tube slab is unperturbed.
  const auto tube = reference_tube();
  CHECK(tube_slab_traversal(profile, tube, 0.2, 0.1).time == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("contact audit on both charts") {
  const auto tube = reference_tube();
  const auto profile = make_profile(1.0, 0.1, 0.5);
  const auto lv = radial_liouville();
  for (auto kind : {SlabChart::OverSigma0, SlabChart::OverBoundaryTube}) {
    const auto chart = lambda_delta_chart(kind, profile, &tube, lv);
    const auto audit = audit_contact_condition(chart, default_sampler(kind, profile, &tube, lv), 300, 7);
    CHECK(audit.passed);
    CHECK(audit.samples == 300);
    CHECK(audit.max_normalization_error <= 1e-8);
    CHECK(audit.max_kernel_error < 1e-6);
  }
}

TEST_CASE("positivity of the ds coefficient limits delta") {
  const auto tube = reference_tube();
  const double cap = max_admissible_delta(1.0, 0.5, tube);
  CHECK(cap == doctest::Approx(0.111139).epsilon(1e-4));
  CHECK(check_ds_positivity(make_profile(1.0, 0.95 * cap, 0.5), tube).positive);
  const auto bad = check_ds_positivity(make_profile(1.0, 0.5, 0.5), tube);
  CHECK_FALSE(bad.positive);
  CHECK(bad.min_coefficient <= 0.0);
  const auto big = make_profile(1.0, 0.5, 0.5);
  CHECK_THROWS_AS(lambda_delta_chart(SlabChart::OverBoundaryTube, big, &tube), InvalidInput);
  auto flat = tube;
  flat.rho = 0.0;
  CHECK_THROWS_AS(lambda_delta_chart(SlabChart::OverBoundaryTube, make_profile(1.0, 0.1, 0.5), &flat),
                  InvalidInput);
}

TEST_CASE("slab volume against closed forms and an oracle") {
  SlabRegion slab;
  slab.A0 = 1.0;
  slab.profile = make_profile(1.0, 0.1, 0.5);
  const auto v = slab_volume(slab);
  const double dbar = slab.profile.delta_bar;
  const double ref = 0.5 * oracle::simpson(
                               [&](double s) { return std::exp(2 * dbar * slab.profile.zeta(s)) - 1; },
                               0.0, 1.0);
  CHECK(v.volume == doctest::Approx(ref).epsilon(1e-10));
  CHECK(v.step_closed_form == doctest::Approx(0.11));
  CHECK(v.lower_bound == doctest::Approx(0.1));
  CHECK(v.exceeds_lower_bound);
  CHECK(v.volume > 0.1);
  CHECK(std::abs(v.volume - v.step_closed_form) <= v.smoothing_budget);

  const double mc = slab_volume_monte_carlo(slab, 200000, 11);
  CHECK(std::abs(mc - v.volume) / v.volume < 0.015);
  CHECK(slab_volume_monte_carlo(slab, 5000, 3) == slab_volume_monte_carlo(slab, 5000, 3));
}

TEST_CASE("inflation budget") {
  // 2 delta (F + eps) = 0.1 against 1 + 2 A0 delta / V = 1.2.
  auto ok = inflation_budget(0.4, 0.1, 0.1, 1.0, 1.0);
  CHECK(ok.lhs == doctest::Approx(std::exp(0.1)));
  CHECK(ok.rhs == doctest::Approx(1.2));
  CHECK(ok.admissible);
  CHECK(ok.any_admissible);
  CHECK(ok.largest_delta > 0.1);
  // At delta = 3: e^3 > 7.
  auto big = inflation_budget(0.4, 0.1, 3.0, 1.0, 1.0);
  CHECK(big.lhs == doctest::Approx(std::exp(3.0)));
  CHECK_FALSE(big.admissible);
  CHECK(big.largest_delta < 3.0);
  CHECK(std::exp(2 * big.largest_delta * 0.5) ==
        doctest::Approx(1 + 2 * big.largest_delta).epsilon(1e-8));
  // F + eps = A0 / V leaves nothing.
  auto none = inflation_budget(0.9, 0.1, 0.1, 1.0, 1.0);
  CHECK_FALSE(none.any_admissible);
  CHECK_FALSE(none.admissible);
  CHECK(none.largest_delta == 0.0);
}

TEST_CASE("very-nice isotopy: winding, interpolation and transversality") {
  const double T = 1.0, r0 = 0.5;
  SUBCASE("single twist") {
    const AnnulusFn eta = [](double tt, double r) {
      return 0.1 + tt + 0.05 * std::sin(2 * kPi * tt) * (1 + r);
    };
    const auto res = make_very_nice(eta, 1, T, r0, 0.1);
    CHECK(res.p == 1);
    CHECK(res.residual < 1e-8);
    CHECK(res.eta_prime(0.3, 0.05) == doctest::Approx(0.4));          // linear near the orbit
    CHECK(res.eta_prime(0.3, 0.45) == doctest::Approx(eta(0.3, 0.45)));  // original outside
    CHECK(check_transversality(res.eta_prime, 2.0, 1, T, r0).passed);
    CHECK_FALSE(check_transversality(res.eta_prime, 0.5, 1, T, r0).passed);
  }
  SUBCASE("triple twist") {
    const AnnulusFn eta = [](double tt, double) { return 3 * tt + 0.02 * std::cos(6 * kPi * tt); };
    const auto res = make_very_nice(eta, 1, T, r0, 0.02);
    CHECK(res.p == 3);
    CHECK(check_transversality(res.eta_prime, 4.0, 1, T, r0).passed);
  }
  SUBCASE("double cover") {
    const AnnulusFn eta = [](double tt, double) { return 1.5 * tt; };
    const auto res = make_very_nice(eta, 2, T, r0, 0.0);
    CHECK(res.p == 3);
    CHECK(check_transversality(res.eta_prime, 2.5, 2, T, r0).passed);
  }
  SUBCASE("non-primitive winding is rejected") {
    const AnnulusFn eta = [](double tt, double) { return tt; };
    CHECK_THROWS_AS(make_very_nice(eta, 2, T, r0, 0.0), InvalidInput);
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(make_profile(-1.0, 0.1, 0.5), InvalidInput);
  CHECK_THROWS_AS(make_profile(1.0, 0.1, 0.0), InvalidInput);
  TubeChart t = reference_tube();
  t.q = 0;
  CHECK_THROWS_AS(validate(t), InvalidInput);
  CHECK_THROWS(slab_traversal(make_profile(1.0, 0.1, 0.5), 2.0, 0.0));
}
