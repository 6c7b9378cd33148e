#include "reeblab/verify.hpp"

#include "reeblab/calabi.hpp"
#include "reeblab/csv.hpp"
#include "reeblab/ellipsoid.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/flow.hpp"
#include "reeblab/inflation.hpp"
#include "reeblab/numerics.hpp"
#include "reeblab/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

namespace reeb::verify {

namespace {

namespace fs = std::filesystem;

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::uint64_t criterion_seed(std::uint64_t seed, int id) {
  // splitmix64 finalizer so that neighbouring criteria get unrelated streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(id);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Opens output_dir/name for writing, or a sink when no directory is configured.
class Artifact {
 public:
  Artifact(const SuiteOptions& o, const std::string& name) {
    if (o.output_dir.empty()) return;
    fs::create_directories(o.output_dir);
    file_.open(o.output_dir / name, std::ios::binary);
    if (!file_) throw NumericalFailure("cannot write " + (o.output_dir / name).string());
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : sink_; }

 private:
  std::ofstream file_;
  std::ostringstream sink_;
};

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      passed = false;
      detail << "FAILED " << what << "; ";
    }
  }
};

const std::vector<std::pair<double, double>>& example_ellipsoids() {
  static const std::vector<std::pair<double, double>> e{
      {1.0, std::sqrt(2.0)}, {1.0, 0.5 * (1.0 + std::sqrt(5.0))}, {2.0, 3.0 * std::sqrt(2.0)}};
  return e;
}

// ---- 1 and 2: closed-form ellipsoid ratios -------------------------------------------------

void ratios_line_class(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c01_ellipsoid_line_class.csv");
  csv::Writer w(file.stream(), {"a", "b", "p", "q", "ratio_gamma1", "ratio_gamma2", "threshold"});
  double worst = 0.0;
  int cases = 0;
  for (const auto& [a, b] : example_ellipsoids()) {
    const ellipsoid::Ellipsoid e{a, b, true};
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
      if (!(b * q > a * p)) continue;
      const auto rows = ellipsoid::report_rows(e, {p, q, ellipsoid::SurfaceKind::LineClass});
      const double r1 = rows.at(0).ratio, r2 = rows.at(1).ratio, th = rows.at(0).threshold;
      worst = std::max({worst, std::abs(r1 - r2), std::abs(r1 - th), std::abs(r2 - th)});
      w.row({a, b, static_cast<std::int64_t>(p), static_cast<std::int64_t>(q), r1, r2, th});
      ++cases;
    }
  }
  out.detail << cases << " surfaces, max pairwise gap " << num(worst);
  out.require(cases == 9, "expected nine admissible (a,b,p,q) cases");
  out.require(worst <= 1e-12, "ratios agree to 1e-12");
}

void ratios_disk(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c02_ellipsoid_disk.csv");
  csv::Writer w(file.stream(), {"a", "b", "ratio_gamma1", "ratio_gamma2", "threshold", "inverse_b"});
  double worst = 0.0;
  for (const auto& [a, b] : example_ellipsoids()) {
    const ellipsoid::Ellipsoid e{a, b, true};
    const auto rows = ellipsoid::report_rows(e, {1, 1, ellipsoid::SurfaceKind::Disk});
    const double r1 = rows.at(0).ratio, r2 = rows.at(1).ratio, th = rows.at(0).threshold;
    worst = std::max({worst, std::abs(r1 - 1.0 / b), std::abs(r2 - 1.0 / b), std::abs(th - 1.0 / b)});
    w.row({a, b, r1, r2, th, 1.0 / b});
  }
  out.detail << "max |ratio - 1/b| " << num(worst);
  out.require(worst <= 1e-12, "all ratios equal 1/b to 1e-12");
}

// ---- 3: crossing counts of a long trajectory -----------------------------------------------

void flow_fidelity(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c03_flow_crossings.csv");
  csv::Writer w(file.stream(), {"a", "b", "surface", "duration", "crossings", "expected",
                                "empirical_rate", "closed_form_rate"});
  std::mt19937_64 rng(criterion_seed(o.seed, 3));
  const double duration = 200.0;
  const ellipsoid::Ellipsoid e{1.0, std::sqrt(2.0), true};
  const std::vector<std::pair<std::string, ellipsoid::PQSurface>> surfaces{
      {"line(1,1)", {1, 1, ellipsoid::SurfaceKind::LineClass}},
      {"line(1,2)", {1, 2, ellipsoid::SurfaceKind::LineClass}},
      {"disk", {1, 1, ellipsoid::SurfaceKind::Disk}}};
  const auto field = ellipsoid::toric_chart_field(e);
  for (const auto& [label, s] : surfaces) {
    const flow::Point start{kTwoPi * uniform01(rng), kTwoPi * uniform01(rng),
                            0.1 + 0.8 * uniform01(rng)};
    const auto section = ellipsoid::toric_surface_section(s);
    const auto run = flow::integrate(field, start, duration, &section);
    const double rate = ellipsoid::torus_crossing_rate(e, s);
    const double expected = rate * duration;
    const double count = std::abs(static_cast<double>(run.crossing_count));
    const double empirical = flow::empirical_frequency(run);
    w.row({e.a, e.b, label, duration, static_cast<std::int64_t>(run.crossing_count), expected,
           empirical, rate});
    out.detail << label << ": " << run.crossing_count << " vs " << num(expected) << "; ";
    out.require(std::abs(count - expected) <= 1.0, label + " count within +-1");
    out.require(std::abs(std::abs(empirical) - rate) <= 0.02 * rate, label + " rate within 2%");
  }
}

// ---- 4-8: inflation --------------------------------------------------------------------------

inflation::TubeChart reference_tube() {
  inflation::TubeChart t;
  t.T = 1.0;
  t.rho = std::sqrt(0.5);
  t.r0 = 0.5;
  t.p = 0;
  t.q = 1;
  return t;
}

void contact_audit(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c04_contact_audit.csv");
  csv::Writer w(file.stream(), {"delta", "chart", "samples", "max_normalization_error",
                                "max_kernel_error", "passed"});
  const auto tube = reference_tube();
  const auto liouville = inflation::radial_liouville();
  int index = 0;
  for (double delta : {0.0, 0.05, 0.1}) {
    const auto profile = inflation::make_profile(1.0, delta, 0.5);
    for (auto kind : {inflation::SlabChart::OverSigma0, inflation::SlabChart::OverBoundaryTube}) {
      const auto* tp = kind == inflation::SlabChart::OverBoundaryTube ? &tube : nullptr;
      const std::string label = tp ? "tube" : "sigma0";
      const auto chart = inflation::lambda_delta_chart(kind, profile, tp, liouville);
      const auto sampler = inflation::default_sampler(kind, profile, tp, liouville);
      const auto audit = inflation::audit_contact_condition(
          chart, sampler, 1000, criterion_seed(o.seed, 40 + index++));
      w.row({delta, label, static_cast<std::int64_t>(audit.samples),
             audit.max_normalization_error, audit.max_kernel_error,
             static_cast<std::int64_t>(audit.passed)});
      out.detail << label << "@" << delta << " " << num(audit.max_normalization_error) << "/"
                 << num(audit.max_kernel_error) << "; ";
      out.require(audit.max_normalization_error <= 1e-8 && audit.max_kernel_error < 1e-6,
                  label + " chart at delta " + num(delta));
    }
  }
}

void action_shift(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c05_slab_traversal.csv");
  csv::Writer w(file.stream(), {"delta", "x", "y", "time", "error"});
  std::mt19937_64 rng(criterion_seed(o.seed, 5));
  const double s0 = 1.0;
  for (double delta : {0.01, 0.05, 0.1}) {
    const auto profile = inflation::make_profile(s0, delta, 0.5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double rad = 0.95 * std::sqrt(uniform01(rng)), ang = kTwoPi * uniform01(rng);
      const double x = rad * std::cos(ang), y = rad * std::sin(ang);
      const double t = inflation::slab_traversal_time(profile, x, y);
      const double err = std::abs(t - (s0 + delta));
      worst = std::max(worst, err);
      w.row({delta, x, y, t, err});
    }
    out.detail << "delta " << delta << " max error " << num(worst) << "; ";
    out.require(worst <= 1e-8, "traversal time at delta " + num(delta));
  }
}

void slab_volume(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c06_slab_volume.csv");
  csv::Writer w(file.stream(), {"delta", "volume", "step_closed_form", "smoothing_budget",
                                "monte_carlo", "monte_carlo_rel_diff", "lower_bound"});
  const double s0 = 1.0, r0 = 0.5, A0 = kPi;
  const double cap = std::min(0.5, inflation::max_admissible_delta(s0, r0, reference_tube()));
  for (double delta : {0.01, 0.1, cap}) {
    const inflation::SlabRegion slab{A0, inflation::make_profile(s0, delta, r0)};
    const auto v = inflation::slab_volume(slab);
    const double mc = inflation::slab_volume_monte_carlo(
        slab, 1'000'000, criterion_seed(o.seed, 60 + static_cast<int>(delta * 1000)));
    const double rel = std::abs(mc - v.volume) / v.volume;
    w.row({delta, v.volume, v.step_closed_form, v.smoothing_budget, mc, rel, v.lower_bound});
    out.detail << "delta " << num(delta) << " vol " << num(v.volume) << " mc " << num(rel)
               << "; ";
    out.require(std::abs(v.volume - v.step_closed_form) <= v.smoothing_budget,
                "step closed form within budget at delta " + num(delta));
    out.require(rel <= 0.005, "Monte Carlo within 0.5% at delta " + num(delta));
    out.require(v.volume > v.lower_bound, "vol > delta A0 at delta " + num(delta));
  }
}

void delta_bar_round_trip(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c07_delta_bar.csv");
  csv::Writer w(file.stream(), {"s0", "delta_bar", "delta", "recovered", "error"});
  std::mt19937_64 rng(criterion_seed(o.seed, 7));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double s0 = 0.25 + 3.75 * uniform01(rng);
    const double target = 0.001 + 1.999 * uniform01(rng);
    const auto zeta = inflation::plateau_bump(s0);
    const double delta = inflation::delta_from_delta_bar(zeta, s0, target);
    const double back = inflation::solve_delta_bar(zeta, s0, delta);
    const double err = std::abs(back - target);
    worst = std::max(worst, err);
    w.row({s0, target, delta, back, err});
  }
  out.detail << "max round-trip error " << num(worst);
  out.require(worst <= 1e-10, "round trip within 1e-10");
}

void very_nice(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c08_very_nice.csv");
  csv::Writer w(file.stream(), {"fixture", "q", "expected_p", "p", "winding", "residual",
                                "max_slope", "bound", "transversal"});
  struct Fixture {
    std::string name;
    int q;
    int p;
    double rot_tau;
    inflation::AnnulusFn eta;
  };
  const double T = 1.0, r0 = 0.5;
  const std::vector<Fixture> fixtures{
      {"linear", 1, 1, 2.0, [=](double t, double) { return t / T; }},
      {"sinusoidal", 1, 1, 2.0,
       [=](double t, double) { return t / T + 0.1 * std::sin(kTwoPi * t / T); }},
      {"multi-twist", 1, 3, 4.0,
       [=](double t, double r) {
         return 3.0 * t / T + 0.05 * (1.0 + r) * std::sin(2.0 * kTwoPi * t / T);
       }},
      {"double-cover", 2, 3, 2.5,
       [=](double t, double) { return 1.5 * t / T + 0.02 * std::sin(kPi * t / T); }}};
  for (const auto& f : fixtures) {
    const auto vn = inflation::make_very_nice(f.eta, f.q, T, r0, 0.0);
    const auto tr = inflation::check_transversality(vn.eta_prime, f.rot_tau, f.q, T, r0);
    w.row({f.name, static_cast<std::int64_t>(f.q), static_cast<std::int64_t>(f.p),
           static_cast<std::int64_t>(vn.p), vn.winding, vn.residual, tr.max_slope, tr.bound,
           static_cast<std::int64_t>(tr.passed)});
    out.detail << f.name << " p=" << vn.p << " res " << num(vn.residual) << "; ";
    out.require(vn.p == f.p && vn.residual < 0.01, f.name + " winding");
    out.require(tr.passed, f.name + " transversality");
  }
}

// ---- 9 and 10: spectra ---------------------------------------------------------------------

void weyl_law(const SuiteOptions& o, Outcome& out) {
  spectrum::ActionSpectrum spec({1.0, std::sqrt(2.0)}, std::sqrt(2.0));
  const auto at = spectrum::weyl_diagnostics(spec, std::vector<std::size_t>{10'000});
  const auto blocks = spectrum::dyadic_blocks(spec, 100, 1'000'000);
  std::vector<std::size_t> ks;
  for (int j = 0; j <= 60; ++j) {
    const auto k = static_cast<std::size_t>(std::llround(std::pow(10.0, j / 10.0)));
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  {
    Artifact file(o, "c09_weyl.csv");
    spectrum::write_weyl_csv(file.stream(), spectrum::weyl_diagnostics(spec, ks));
  }
  {
    Artifact file(o, "c09_weyl_blocks.csv");
    spectrum::write_blocks_csv(file.stream(), blocks);
  }
  const double n = at.front().normalized;
  const auto fit = spectrum::subleading_exponent(blocks);
  out.detail << "normalized(1e4) " << num(n) << ", " << blocks.size()
             << " blocks, subleading exponent " << num(fit.exponent);
  out.require(n >= 0.95 && n <= 1.05, "normalized ratio at k=1e4 in [0.95, 1.05]");
  out.require(spectrum::deviation_nonincreasing(blocks), "dyadic deviation nonincreasing");
}

std::vector<double> brute_spectrum(double a1, double a2, std::size_t count) {
  // The count smallest values use multiplicities below count, so this grid contains them.
  std::vector<double> v;
  for (std::size_t m1 = 0; m1 < count; ++m1)
    for (std::size_t m2 = 0; m2 < count; ++m2)
      v.push_back(static_cast<double>(m1) * a1 + static_cast<double>(m2) * a2);
  std::sort(v.begin(), v.end());
  v.resize(count);
  return v;
}

void disjoint_union(const SuiteOptions& o, Outcome& out) {
  Artifact file(o, "c10_disjoint_union.csv");
  csv::Writer w(file.stream(), {"trial", "k", "dynamic_programming", "brute_force"});
  std::mt19937_64 rng(criterion_seed(o.seed, 10));
  constexpr std::size_t kMax = 50;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> g(4);
    for (double& x : g) x = 0.5 + 2.5 * uniform01(rng);
    std::vector<spectrum::ActionSpectrum> specs{spectrum::ActionSpectrum({g[0], g[1]}),
                                                spectrum::ActionSpectrum({g[2], g[3]})};
    const auto dp = spectrum::disjoint_union_table(specs, kMax);
    const auto s1 = brute_spectrum(g[0], g[1], kMax + 1), s2 = brute_spectrum(g[2], g[3], kMax + 1);
    for (std::size_t k = 0; k <= kMax; ++k) {
      double best = -1.0;
      for (std::size_t l = 0; l <= k; ++l) best = std::max(best, s1[l] + s2[k - l]);
      worst = std::max(worst, std::abs(best - dp[k]));
      w.row({static_cast<std::int64_t>(trial), static_cast<std::int64_t>(k), dp[k], best});
    }
  }
  out.detail << "20 pairs, max |dp - brute| " << num(worst);
  out.require(worst <= 1e-12, "dynamic programming equals brute force");
}

// ---- 11: Calabi suite --------------------------------------------------------------------------

void calabi_suite(const SuiteOptions& o, Outcome& out) {
  using namespace calabi;
  const auto model = twist_map(ideal_twist());
  const auto beta = standard_primitive(model);
  const auto f = compute_f_beta(model, beta);
  const double cal = calabi_invariant(f);
  auto search = find_orbits_radial(model, 3);
  assign_actions(search.orbits, f);
  const auto thm = theorem_calabi_check(f, cal, search.orbits);
  {
    Artifact file(o, "c11_calabi_orbits.csv");
    write_orbits_csv(file.stream(), search.orbits);
  }
  {
    Artifact file(o, "c11_calabi_theorem.csv");
    write_report_csv(file.stream(), thm);
  }
  out.detail << "Cal " << std::setprecision(12) << cal << std::setprecision(6) << "; ";
  out.require(std::abs(cal + 2.0 / 3.0) <= 1e-9, "Cal = -2/3 within 1e-9");
  out.require(thm.hypothesis, "hypothesis Cal < min f on the boundary");

  bool witness = false;
  for (const auto& orb : search.orbits)
    if (std::abs(orb.points.front().r - std::sqrt(0.5)) <= 1e-12 &&
        std::abs(orb.mean_action + 0.75) <= 1e-9 && orb.mean_action <= cal)
      witness = true;
  out.require(thm.conclusion_witnessed && witness, "witness at r = 1/sqrt 2 with mean -0.75");

  Artifact file(o, "c11_calabi_checks.csv");
  csv::Writer w(file.stream(), {"check", "value"});
  double worst = 0.0;
  std::mt19937_64 rng(criterion_seed(o.seed, 11));
  for (int i = 0; i < 5; ++i) {
    const auto mu = random_bump(rng());
    const auto rep = primitive_perturbation_check(model, beta, mu, search.orbits);
    worst = std::max({worst, rep.calabi_deviation, rep.max_action_deviation});
    w.row({"perturbation_" + std::to_string(i), std::max(rep.calabi_deviation, rep.max_action_deviation)});
  }
  out.detail << "perturbation " << num(worst) << "; ";
  out.require(worst <= 1e-8, "primitive invariance within 1e-8");

  const auto flipped = twist_map(ideal_twist(-1.0));
  const auto ff = compute_f_beta(flipped, standard_primitive(flipped));
  const double cal_flipped = calabi_invariant(ff);
  auto flipped_orbits = find_orbits_radial(flipped, 3);
  assign_actions(flipped_orbits.orbits, ff);
  const auto dual = theorem_calabi_check(ff, cal_flipped, flipped_orbits.orbits);
  w.row({"flipped_calabi", cal_flipped});
  w.row({"flipped_max_mean_action", dual.max_mean_action});
  out.detail << "dual Cal " << num(cal_flipped) << "; ";
  out.require(dual.dual_hypothesis && dual.dual_conclusion_witnessed, "dual on the flipped model");

  double shift_error = 0.0;
  for (int n : {-2, 1, 3}) {
    const auto lifted = shift_lift(model, n);
    const auto fn = compute_f_beta(lifted, beta);
    shift_error = std::max(shift_error, std::abs(calabi_invariant(fn) - cal - n));
    for (const auto& orb : search.orbits)
      shift_error = std::max(shift_error,
                             std::abs(orbit_action(orb, fn).mean_action - orb.mean_action - n));
  }
  w.row({"shift_error", shift_error});
  out.detail << "shift error " << num(shift_error);
  out.require(shift_error <= 1e-14, "integer shift identity");
}

struct Entry {
  const char* name;
  double limit;
  std::function<void(const SuiteOptions&, Outcome&)> run;
};

const std::map<int, Entry>& registry() {
  static const std::map<int, Entry> r{
      {1, {"ellipsoid line-class ratios", 1.0, ratios_line_class}},
      {2, {"ellipsoid disk ratios", 1.0, ratios_disk}},
      {3, {"flow-engine fidelity", 5.0, flow_fidelity}},
      {4, {"contact-condition audit", 10.0, contact_audit}},
      {5, {"action-shift law", 10.0, action_shift}},
      {6, {"slab volume", 30.0, slab_volume}},
      {7, {"delta-bar round trip", 1.0, delta_bar_round_trip}},
      {8, {"very-nice isotopy", 5.0, very_nice}},
      {9, {"Weyl law diagnostic", 60.0, weyl_law}},
      {10, {"disjoint-union rule", 10.0, disjoint_union}},
      {11, {"Calabi suite", 30.0, calabi_suite}},
  };
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw InvalidInput("unknown criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = it->second.name;
  r.time_limit = it->second.limit;
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second.run(options, out);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail << "error: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.within_time_limit = r.seconds < r.time_limit;
  r.passed = out.passed;
  r.detail = out.detail.str();
  while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<CriterionResult> results;
  for (const auto& [id, entry] : registry())
    if (options.only.empty() ||
        std::find(options.only.begin(), options.only.end(), id) != options.only.end())
      results.push_back(run_criterion(id, options));
  return results;
}

std::vector<std::string> differing_csv_files(const fs::path& a, const fs::path& b) {
  auto listing = [](const fs::path& root) {
    std::map<std::string, fs::path> files;
    if (fs::exists(root))
      for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file() && e.path().extension() == ".csv")
          files[fs::relative(e.path(), root).generic_string()] = e.path();
    return files;
  };
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const auto la = listing(a), lb = listing(b);
  std::vector<std::string> diff;
  for (const auto& [name, path] : la) {
    const auto other = lb.find(name);
    if (other == lb.end() || read(path) != read(other->second)) diff.push_back(name);
  }
  for (const auto& [name, path] : lb)
    if (!la.count(name)) diff.push_back(name);
  return diff;
}

CriterionResult determinism_check(std::uint64_t seed, const fs::path& scratch,
                                  const std::vector<int>& only) {
  CriterionResult r;
  r.id = kDeterminismCriterion;
  r.name = "determinism";
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t files = 0;
  std::vector<std::string> diff;
  try {
    for (const char* run : {"a", "b"}) {
      fs::remove_all(scratch / run);
      SuiteOptions o{seed, scratch / run, only};
      const auto results = run_suite(o);
      std::ofstream summary(scratch / run / "summary.csv", std::ios::binary);
      write_summary_csv(summary, results);
    }
    for (const auto& e : fs::directory_iterator(scratch / "a"))
      if (e.path().extension() == ".csv") ++files;
    diff = differing_csv_files(scratch / "a", scratch / "b");
    r.passed = files > 0 && diff.empty();
    std::ostringstream d;
    d << files << " CSV files compared";
    for (const auto& name : diff) d << "; differs: " << name;
    r.detail = d.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.ok() ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << std::fixed
    << std::setprecision(2) << r.seconds << " s";
  if (r.time_limit > 0.0) s << " / limit " << std::setprecision(0) << r.time_limit << " s";
  s << ")";
  if (!r.within_time_limit) s << " TIME LIMIT EXCEEDED";
  s << ": " << r.detail;
  return s.str();
}

void write_summary_csv(std::ostream& out, const std::vector<CriterionResult>& results) {
  csv::Writer w(out, {"id", "name", "passed", "detail"});
  for (const auto& r : results)
    w.row({static_cast<std::int64_t>(r.id), r.name, static_cast<std::int64_t>(r.passed), r.detail});
}

}  // namespace reeb::verify
