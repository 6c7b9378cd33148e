#include "oracles.hpp"
#include "reeblab/csv.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace reeb;

TEST_CASE("smoothstep is a C2 ramp from 0 to 1") {
  CHECK(smoothstep5(-1.0) == 0.0);
  CHECK(smoothstep5(2.0) == 1.0);
  CHECK(smoothstep5(0.5) == doctest::Approx(0.5));
  for (double u : {0.1, 0.37, 0.8})
    CHECK(smoothstep5_derivative(u) ==
          doctest::Approx(oracle::derivative(smoothstep5, u)).epsilon(1e-8));
  CHECK(smoothstep5_derivative(0.0) == 0.0);
}

TEST_CASE("periodic wrapping") {
  CHECK(wrap_periodic(-0.25, 1.0) == doctest::Approx(0.75));
  CHECK(wrap_periodic(7.5, 2.0) == doctest::Approx(1.5));
  CHECK(wrap_symmetric(0.75, 1.0) == doctest::Approx(-0.25));
  const double w = wrap_periodic(-1e-18, 1.0);
  CHECK(w >= 0.0);
  CHECK(w < 1.0);
}

TEST_CASE("adaptive quadrature agrees with Simpson and closed forms") {
  CHECK(quad([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13) ==
        doctest::Approx(std::expm1(1.0)).epsilon(1e-14));
  // A narrow bump that a single Gauss-Kronrod panel would step over.
  auto bump = [](double x) { return std::exp(-std::pow((x - 0.6137) / 0.004, 2)); };
  CHECK(quad(bump, 0.0, 1.0, 1e-12) == doctest::Approx(0.004 * std::sqrt(kPi)).epsilon(1e-10));
  auto kink = [](double x) { return std::abs(x - 0.3); };
  const double knots[] = {0.3};
  CHECK(quad(kink, 0.0, 1.0, 1e-13, knots) == doctest::Approx(0.045 + 0.245).epsilon(1e-13));
  auto f = [](double x) { return std::sin(3 * x) * std::exp(-x); };
  CHECK(quad(f, 2.0, 0.0, 1e-12) == doctest::Approx(-oracle::simpson(f, 0.0, 2.0)).epsilon(1e-11));
  CHECK_THROWS_AS(quad(f, 0.0, 1.0, -1.0), InvalidInput);
}

TEST_CASE("quadrature reports failure on a non-integrable singularity") {
  CHECK_THROWS_AS(quad([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10), NumericalFailure);
}

TEST_CASE("bisection") {
  CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14, 200) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, 0.0, 1.0, 1e-12, 100),
                  InvalidInput);
}

TEST_CASE("uniform01 covers [0, 1) with 53-bit resolution") {
  std::mt19937_64 rng(5);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("csv dialect round-trips doubles and quotes text") {
  std::ostringstream out;
  csv::Writer w(out, {"x", "label"});
  const double third = 1.0 / 3.0;
  w.row({third, std::string("a,b")});
  w.row({std::int64_t{7}, std::string("say \"hi\"")});
  CHECK(out.str() == "x,label\n0.33333333333333331,\"a,b\"\n7,\"say \"\"hi\"\"\"\n");
  CHECK(std::stod(csv::format(third)) == third);
  CHECK_THROWS_AS(w.row({1.0}), InvalidInput);
}
