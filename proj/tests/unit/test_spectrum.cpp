#include "reeblab/errors.hpp"
#include "reeblab/spectrum.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace reeb;
using namespace reeb::spectrum;

TEST_CASE("first values of the (1, sqrt 2) spectrum") {
  ActionSpectrum s({1.0, std::sqrt(2.0)}, std::sqrt(2.0));
  const double expect[] = {0, 1, 1.41421356, 2, 2.41421356, 2.82842712, 3, 3.41421356};
  for (std::size_t k = 0; k < 8; ++k) CHECK(s.value(k) == doctest::Approx(expect[k]).epsilon(1e-8));
  CHECK(s.witness(4) == std::vector<std::uint32_t>{1, 1});
  CHECK(s.witness(5) == std::vector<std::uint32_t>{0, 2});
  const auto w = weyl_diagnostics(s, 1, 2);  // inclusive range
  REQUIRE(w.size() == 2);
  CHECK(w[0].normalized == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("lazy enumeration matches brute force") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<double> gens(1 + trial % 3);
    for (auto& g : gens) g = u(rng);
    ActionSpectrum s(gens);
    const auto ref = oracle::spectrum(gens, 300);
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(s.value(k) == doctest::Approx(ref[k]).epsilon(1e-13));
    // A witness reproduces its value exactly.
    const auto m = s.witness(123);
    double v = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i) v += m[i] * gens[i];
    CHECK(v == s.value(123));
  }
}

TEST_CASE("multiplicities are kept") {
  ActionSpectrum s({1.0, 1.0});
  CHECK(s.value(1) == 1.0);
  CHECK(s.value(2) == 1.0);
  CHECK(s.value(3) == 2.0);
  CHECK(s.value(5) == 2.0);
}

TEST_CASE("scaling the generators scales the spectrum") {
  ActionSpectrum a({1.0, std::sqrt(3.0)});
  ActionSpectrum b({2.5, 2.5 * std::sqrt(3.0)});
  for (std::size_t k = 0; k < 500; k += 7) CHECK(b.value(k) == doctest::Approx(2.5 * a.value(k)).epsilon(1e-13));
}

TEST_CASE("Weyl diagnostics converge and blocks shrink") {
  ActionSpectrum s({1.0, std::sqrt(2.0)}, std::sqrt(2.0));
  const std::size_t ks[] = {10000};
  CHECK(std::abs(weyl_diagnostics(s, ks)[0].normalized - 1.0) < 0.05);
  const auto blocks = dyadic_blocks(s, 100, 100000);
  REQUIRE(blocks.size() == 10);
  CHECK(blocks.front().k_begin == 100);
  CHECK(blocks.back().k_end == 100001);
  CHECK(deviation_nonincreasing(blocks));
  const auto fit = subleading_exponent(blocks);
  CHECK(fit.blocks == blocks.size());
  CHECK(fit.exponent < 0.5);
  CHECK_FALSE(explicit_constant_check(s, std::nullopt, 100, 1000).has_value());
  const auto bound = explicit_constant_check(s, 10.0, 100, 1000);
  REQUIRE(bound.has_value());
  CHECK(bound->holds);
  CHECK(bound->checked == 901);
}

TEST_CASE("disjoint unions") {
  std::vector<ActionSpectrum> ab{ActionSpectrum({1.0}), ActionSpectrum({10.0})};
  CHECK(disjoint_union_spectrum(ab, 3) == 30.0);
  std::vector<ActionSpectrum> twins{ActionSpectrum({1.0}), ActionSpectrum({1.0})};
  CHECK(disjoint_union_spectrum(twins, 4) == 4.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ActionSpectrum> parts{ActionSpectrum({u(rng), u(rng)}), ActionSpectrum({u(rng)}),
                                      ActionSpectrum({u(rng), u(rng)})};
    std::vector<std::vector<double>> tables;
    for (auto& p : parts) {
      p.ensure(31);
      tables.emplace_back(p.values().begin(), p.values().begin() + 31);
    }
    const auto dp = disjoint_union_table(parts, 30);
    for (std::size_t k = 0; k <= 30; k += 3) CHECK(dp[k] == doctest::Approx(oracle::union_brute_force(tables, k)).epsilon(1e-14));
  }
}

TEST_CASE("invalid spectra and budgets") {
  CHECK_THROWS_AS(ActionSpectrum({}), InvalidInput);
  CHECK_THROWS_AS(ActionSpectrum({1.0, -2.0}), InvalidInput);
  ActionSpectrum s({1.0, std::sqrt(2.0), std::sqrt(3.0)}, 0.0, 1000);
  CHECK_THROWS_AS(s.ensure(100000), NumericalFailure);
  ActionSpectrum novol({1.0});
  CHECK_THROWS_AS(weyl_diagnostics(novol, 1, 10), InvalidInput);
}

TEST_CASE("csv layout") {
  ActionSpectrum s({1.0, 2.0});
  std::ostringstream out;
  write_spectrum_csv(out, s, 3);
  CHECK(out.str() == "k,value,m1,m2\n0,0,0,0\n1,1,1,0\n2,2,2,0\n");
}
