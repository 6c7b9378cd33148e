#include "reeblab/experiments.hpp"

#include "reeblab/calabi.hpp"
#include "reeblab/core_model.hpp"
#include "reeblab/csv.hpp"
#include "reeblab/ellipsoid.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/flow.hpp"
#include "reeblab/inflation.hpp"
#include "reeblab/numerics.hpp"
#include "reeblab/spectrum.hpp"
#include "reeblab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>

namespace reeb::experiments {

namespace fs = std::filesystem;
using config::ConfigError;
using config::ExperimentConfig;

bool RunResult::passed() const {
  return !assertions.empty() &&
         std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

namespace {

struct Context {
  const ExperimentConfig& cfg;
  fs::path dir;
  std::ostream& report;
  RunResult result;

  std::ofstream open(const std::string& name) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericalFailure("cannot write " + path.string());
    result.artifacts.push_back(path);
    return out;
  }

  void check(const std::string& name, bool passed) {
    result.assertions.push_back({name, passed});
    report << (passed ? "  [ok]   " : "  [FAIL] ") << name << '\n';
  }
};

int checked_int(const ExperimentConfig& cfg, const char* key) {
  const auto v = cfg.integer(key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ConfigError(key, "out of range");
  return static_cast<int>(v);
}

std::size_t checked_count(const ExperimentConfig& cfg, const char* key, std::int64_t min = 1) {
  const auto v = cfg.integer(key);
  if (v < min) throw ConfigError(key, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

ellipsoid::PQSurface surface_from(const ExperimentConfig& cfg) {
  const std::string kind = cfg.text("params.surface");
  ellipsoid::PQSurface s{checked_int(cfg, "params.p"), checked_int(cfg, "params.q"),
                         ellipsoid::SurfaceKind::LineClass};
  if (kind == "disk") s.kind = ellipsoid::SurfaceKind::Disk;
  else if (kind != "line") throw ConfigError("params.surface", "expected 'line' or 'disk'");
  return s;
}

// ---- ellipsoid-report -----------------------------------------------------------------------

void ellipsoid_report(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const ellipsoid::Ellipsoid e{cfg.number("params.a"), cfg.number("params.b"), true};
  const auto s = surface_from(cfg);
  const double tol = cfg.number("tolerances.comparison");
  const auto rows = ellipsoid::report_rows(e, s);
  {
    auto out = ctx.open("ellipsoid_report.csv");
    ellipsoid::write_report_csv(out, rows);
  }
  auto& r = ctx.report;
  r << "ellipsoid E(" << e.a << ", " << e.b << "), surface "
    << (s.kind == ellipsoid::SurfaceKind::Disk ? std::string("disk")
                                               : "line class (" + std::to_string(s.p) + "," +
                                                     std::to_string(s.q) + ")")
    << "\n";
  r << std::setprecision(10);
  r << std::left << std::setw(10) << "orbit" << std::setw(16) << "action" << std::setw(16)
    << "rot_tau" << std::setw(16) << "rot_sigma" << std::setw(18) << "gamma_dot_sigma"
    << std::setw(16) << "ratio" << "threshold\n";
  for (const auto& row : rows) {
    r << std::setw(10) << row.orbit << std::setw(16) << row.action << std::setw(16) << row.rot_tau
      << std::setw(16) << (row.rot_sigma ? csv::format(*row.rot_sigma).substr(0, 14) : "-")
      << std::setw(18) << row.gamma_dot_sigma << std::setw(16) << row.ratio << row.threshold
      << "\n";
  }
  r << std::right;
  const auto data = ellipsoid::pq_surface_data(e, s);
  const auto ineq = model::evaluate_main_inequality(ellipsoid::orbit_samples(e, s), data.area,
                                                    ellipsoid::ellipsoid_volume(e), tol);
  r << ineq.to_text();
  ctx.check("frequency bound sup ratio >= Area/vol", ineq.frequency_bound_holds);
  bool equal = true;
  for (const auto& row : rows) equal = equal && std::abs(row.ratio - row.threshold) <= tol;
  ctx.check("both orbit ratios equal Area/vol within " + csv::format(tol), equal);
}

// ---- flow-sim -------------------------------------------------------------------------------

void flow_sim(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const ellipsoid::Ellipsoid e{cfg.number("params.a"), cfg.number("params.b"), true};
  const auto s = surface_from(cfg);
  ellipsoid::validate(e);
  ellipsoid::validate(s);
  const double duration = cfg.number("params.duration");
  if (!(duration > 0.0)) throw ConfigError("params.duration", "must be positive");
  const auto start = cfg.numbers("params.start");
  if (start.size() != 3) throw ConfigError("params.start", "expected three numbers");
  if (!(start[2] > 0.0 && start[2] < 1.0))
    throw ConfigError("params.start", "third coordinate w must lie in (0, 1)");
  flow::IntegratorOptions opts;
  opts.rel_tol = cfg.number("tolerances.rel");
  opts.abs_tol = cfg.number("tolerances.abs");
  opts.event_tol = cfg.number("tolerances.event");
  opts.max_step = cfg.number("tolerances.max_step");

  const auto field = ellipsoid::toric_chart_field(e);
  const auto section = ellipsoid::toric_surface_section(s);
  flow::TrajectorySummary run;
  if (cfg.flag("params.write_trajectory")) {
    auto out = ctx.open("trajectory.csv");
    flow::TrajectoryCsv traj(out);
    run = flow::integrate(field, {start[0], start[1], start[2]}, duration, &section, opts,
                          traj.observer());
  } else {
    run = flow::integrate(field, {start[0], start[1], start[2]}, duration, &section, opts);
  }
  {
    auto out = ctx.open("events.csv");
    flow::write_events_csv(out, run);
  }
  const double rate = ellipsoid::torus_crossing_rate(e, s);
  const double expected = rate * duration;
  const double empirical = std::abs(flow::empirical_frequency(run));
  {
    auto out = ctx.open("flow_summary.csv");
    csv::Writer w(out, {"duration", "crossings", "expected", "empirical_rate", "closed_form_rate",
                        "accepted_steps"});
    w.row({duration, static_cast<std::int64_t>(run.crossing_count), expected, empirical, rate,
           static_cast<std::int64_t>(run.accepted_steps)});
  }
  ctx.report << std::setprecision(10) << "crossings " << run.crossing_count << " (closed form "
             << expected << "), empirical rate " << empirical << " vs " << rate << ", "
             << run.accepted_steps << " steps\n";
  const double rate_rel = cfg.number("tolerances.rate_rel");
  ctx.check("trajectory stays in the chart", !run.exited_chart);
  ctx.check("crossing count within +-1 of rate * duration",
            std::abs(std::abs(static_cast<double>(run.crossing_count)) - expected) <= 1.0);
  ctx.check("empirical rate within " + csv::format(rate_rel) + " (relative)",
            std::abs(empirical - rate) <= rate_rel * rate);
}

// ---- inflate-check --------------------------------------------------------------------------

void inflate_check(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const double s0 = cfg.number("params.s0"), delta = cfg.number("params.delta"),
               r0 = cfg.number("params.r0"), area = cfg.number("params.area");
  inflation::TubeChart tube;
  tube.T = cfg.number("params.tube_T");
  tube.rho = cfg.number("params.tube_rho");
  tube.r0 = r0;
  tube.p = checked_int(cfg, "params.tube_p");
  tube.q = checked_int(cfg, "params.tube_q");
  inflation::validate(tube);
  const auto profile = inflation::make_profile(s0, delta, r0);
  const auto seed = cfg.seed();
  auto& r = ctx.report;
  r << std::setprecision(10) << "profile s0=" << s0 << " delta=" << delta
    << " delta_bar=" << profile.delta_bar << " r0=" << r0 << "\n";

  const auto pos = inflation::check_ds_positivity(profile, tube);
  const double admissible = inflation::max_admissible_delta(s0, r0, tube);
  r << "ds-coefficient minimum " << pos.min_coefficient << " at (s, r) = (" << pos.at_s << ", "
    << pos.at_r << "); largest admissible delta " << admissible << "\n";
  ctx.check("ds coefficient positive on the tube grid", pos.positive);

  const auto liouville = inflation::radial_liouville();
  {
    auto out = ctx.open("contact_audit.csv");
    csv::Writer w(out, {"chart", "samples", "max_normalization_error", "max_kernel_error",
                        "passed"});
    const auto samples = checked_count(cfg, "params.audit_samples");
    for (auto kind : {inflation::SlabChart::OverSigma0, inflation::SlabChart::OverBoundaryTube}) {
      const auto* tp = kind == inflation::SlabChart::OverBoundaryTube ? &tube : nullptr;
      if (tp && !pos.positive) continue;
      const std::string label = tp ? "tube" : "sigma0";
      const auto chart = inflation::lambda_delta_chart(kind, profile, tp, liouville);
      const auto audit = inflation::audit_contact_condition(
          chart, inflation::default_sampler(kind, profile, tp, liouville), samples,
          seed + (tp ? 1 : 0), cfg.number("tolerances.normalization"),
          cfg.number("tolerances.kernel"));
      w.row({label, static_cast<std::int64_t>(audit.samples), audit.max_normalization_error,
             audit.max_kernel_error, static_cast<std::int64_t>(audit.passed)});
      r << label << " chart: max |lambda(R)-1| " << audit.max_normalization_error
        << ", max |i_R dlambda| " << audit.max_kernel_error << "\n";
      ctx.check(label + " contact audit", audit.passed);
    }
  }
  {
    auto out = ctx.open("traversal.csv");
    csv::Writer w(out, {"x", "y", "time", "error"});
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    const auto n = checked_count(cfg, "params.traversal_samples");
    for (std::size_t i = 0; i < n; ++i) {
      const double rad = 0.95 * std::sqrt(uniform01(rng)), ang = kTwoPi * uniform01(rng);
      const double x = rad * std::cos(ang), y = rad * std::sin(ang);
      const double t = inflation::slab_traversal_time(profile, x, y, liouville);
      const double err = std::abs(t - (s0 + delta));
      worst = std::max(worst, err);
      w.row({x, y, t, err});
    }
    r << "slab traversal: max |time - (s0 + delta)| " << worst << "\n";
    ctx.check("traversal time equals s0 + delta", worst <= cfg.number("tolerances.traversal"));
  }
  {
    const inflation::SlabRegion slab{area, profile};
    const auto v = inflation::slab_volume(slab);
    const double mc =
        inflation::slab_volume_monte_carlo(slab, checked_count(cfg, "params.mc_samples"), seed);
    const double rel = v.volume > 0.0 ? std::abs(mc - v.volume) / v.volume : std::abs(mc);
    auto out = ctx.open("slab_volume.csv");
    csv::Writer w(out, {"volume", "step_closed_form", "smoothing_budget", "monte_carlo",
                        "lower_bound"});
    w.row({v.volume, v.step_closed_form, v.smoothing_budget, mc, v.lower_bound});
    r << "slab volume " << v.volume << " (step form " << v.step_closed_form << ", budget "
      << v.smoothing_budget << ", Monte Carlo " << mc << ", delta*A0 " << v.lower_bound << ")\n";
    ctx.check("volume within smoothing budget of the step form",
              std::abs(v.volume - v.step_closed_form) <= v.smoothing_budget);
    ctx.check("Monte Carlo agrees", rel <= cfg.number("tolerances.monte_carlo_rel"));
    if (delta > 0.0) ctx.check("volume exceeds delta * A0", v.exceeds_lower_bound);
  }
  {
    const auto b = inflation::inflation_budget(cfg.number("params.budget_rate"), 0.0, delta, area,
                                               cfg.number("params.budget_volume"));
    auto out = ctx.open("budget.csv");
    csv::Writer w(out, {"lhs", "rhs", "admissible", "any_admissible", "largest_delta"});
    w.row({b.lhs, b.rhs, static_cast<std::int64_t>(b.admissible),
           static_cast<std::int64_t>(b.any_admissible), b.largest_delta});
    r << "budget exp(2 delta (F+eps)) = " << b.lhs << " vs 1 + 2 A0 delta / V = " << b.rhs
      << (b.admissible ? " (admissible)" : " (not admissible)") << "; largest admissible delta "
      << b.largest_delta << "\n";
  }
}

// ---- spectrum -------------------------------------------------------------------------------

void spectrum_run(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto gens = cfg.numbers("params.generators");
  if (gens.empty()) throw ConfigError("params.generators", "needs at least one generator");
  double vol = cfg.number("params.volume");
  const bool weyl = cfg.flag("params.weyl");
  if (vol == 0.0 && gens.size() == 2) vol = gens[0] * gens[1];
  if (weyl && !(vol > 0.0))
    throw ConfigError("params.volume", "Weyl diagnostics need a positive volume");
  const auto k_max = checked_count(cfg, "params.k_max");
  spectrum::ActionSpectrum spec(gens, vol);
  {
    auto out = ctx.open("spectrum.csv");
    spectrum::write_spectrum_csv(out, spec, k_max + 1);
  }
  ctx.report << std::setprecision(12) << "spectrum of " << gens.size()
             << " generators: value at k=" << k_max << " is " << spec.value(k_max) << "\n";
  ctx.check("spectrum enumerated to k_max", spec.enumerated() >= k_max + 1);
  if (!weyl) return;

  const auto diag = spectrum::weyl_diagnostics(spec, 1, k_max);
  {
    auto out = ctx.open("weyl.csv");
    spectrum::write_weyl_csv(out, diag);
  }
  const double band = cfg.number("tolerances.weyl_band");
  const double n = diag.back().normalized;
  ctx.report << "normalized c_k^2 / (2 vol k) at k=" << k_max << ": " << n << "\n";
  ctx.check("normalized ratio at k_max within 1 +- " + csv::format(band), std::abs(n - 1.0) <= band);
  const auto lo = checked_count(cfg, "params.block_lo");
  if (k_max >= 4 * lo) {
    const auto blocks = spectrum::dyadic_blocks(spec, lo, k_max);
    auto out = ctx.open("weyl_blocks.csv");
    spectrum::write_blocks_csv(out, blocks);
    const auto fit = spectrum::subleading_exponent(blocks);
    ctx.report << blocks.size() << " dyadic blocks; fitted subleading exponent " << fit.exponent
               << " (report only)\n";
    ctx.check("dyadic-block deviation nonincreasing", spectrum::deviation_nonincreasing(blocks));
  }
  const double c = cfg.number("params.explicit_constant");
  if (c > 0.0) {
    const auto chk = spectrum::explicit_constant_check(spec, c, 1, k_max);
    ctx.report << "explicit bound with C=" << c << ": max error/bound " << chk->max_ratio
               << " at k=" << chk->worst_k << "\n";
    ctx.check("explicit error bound holds", chk->holds);
  }
}

// ---- calabi ---------------------------------------------------------------------------------

calabi::SurfaceMapModel build_model(const ExperimentConfig& cfg) {
  using namespace calabi;
  const std::string name = cfg.text("params.model");
  const std::string dom = cfg.text("params.domain");
  if (dom != "disk" && dom != "annulus")
    throw ConfigError("params.domain", "expected 'disk' or 'annulus'");
  const Domain domain = dom == "disk" ? Domain::Disk : Domain::Annulus;
  const double r_in = cfg.number("params.r_in");
  TwistProfile profile;
  if (name == "ideal-twist") profile = ideal_twist(1.0);
  else if (name == "flipped-twist") profile = ideal_twist(-1.0);
  else if (name == "smoothed-twist") profile = smoothed_twist();
  else if (name == "rigid-rotation") profile = constant_twist(cfg.number("params.rotation"));
  else if (name == "spline")
    profile = spline_twist(cfg.numbers("params.spline_r"), cfg.numbers("params.spline_tau"));
  else
    throw ConfigError("params.model", "expected ideal-twist, flipped-twist, smoothed-twist, "
                                      "rigid-rotation or spline");
  return twist_map(std::move(profile), domain, r_in);
}

void calabi_run(Context& ctx) {
  using namespace calabi;
  const auto& cfg = ctx.cfg;
  const auto model = build_model(cfg);
  Tolerances tol;
  tol.calabi_tol = cfg.number("tolerances.calabi");
  tol.path_agreement = cfg.number("tolerances.path_agreement");
  const auto beta = standard_primitive(model);
  const auto mc = check_model(model);
  FBetaReport fr;
  const auto f = compute_f_beta(model, beta, &fr, tol);
  const double cal = calabi_invariant(f);
  auto search = find_orbits_radial(model, checked_int(cfg, "params.orbit_budget"));
  assign_actions(search.orbits, f);
  {
    auto out = ctx.open("orbits.csv");
    write_orbits_csv(out, search.orbits);
  }
  auto& r = ctx.report;
  r << std::setprecision(12) << "model " << model.name << " on the "
    << (model.domain == Domain::Disk ? "disk" : "annulus") << ", theta_B = " << model.theta_B
    << "\n";
  r << "area defect " << mc.max_area_defect << ", boundary "
    << (mc.boundary_rigid ? "rigid" : "not rigid (idealized model)") << "\n";
  r << "Cal = " << cal << "; " << search.orbits.size() << " periodic orbits\n";
  for (const auto& l : search.log) r << "  " << l << "\n";
  ctx.check("map preserves area", mc.area_preserving);

  if (cfg.flag("params.check_theorem")) {
    const auto thm = theorem_calabi_check(f, cal, search.orbits, cfg.number("tolerances.comparison"));
    {
      auto out = ctx.open("theorem.csv");
      write_report_csv(out, thm);
    }
    r << "boundary values of f in [" << thm.min_boundary_f << ", " << thm.max_boundary_f << "]\n";
    r << "hypothesis Cal < min_B f: " << (thm.hypothesis ? "holds" : "fails") << "\n";
    if (thm.witness) {
      const auto& w = search.orbits[*thm.witness];
      r << "witness: orbit " << w.origin << " at r=" << w.points.front().r << " with mean action "
        << w.mean_action << " <= Cal\n";
    }
    r << "dual hypothesis Cal > max_B f: " << (thm.dual_hypothesis ? "holds" : "fails") << "\n";
    if (thm.dual_witness) {
      const auto& w = search.orbits[*thm.dual_witness];
      r << "dual witness: orbit " << w.origin << " at r=" << w.points.front().r
        << " with mean action " << w.mean_action << " >= Cal\n";
    }
    ctx.check("hypothesis implies a witnessed orbit", !thm.hypothesis || thm.conclusion_witnessed);
    ctx.check("dual hypothesis implies a witnessed orbit",
              !thm.dual_hypothesis || thm.dual_conclusion_witnessed);
  }

  const auto n = checked_count(cfg, "params.perturbations", 0);
  if (n > 0) {
    auto out = ctx.open("perturbations.csv");
    csv::Writer w(out, {"perturbation", "calabi_deviation", "max_action_deviation"});
    std::mt19937_64 rng(cfg.seed());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto mu = random_bump(rng(), model.r_min());
      const auto rep = primitive_perturbation_check(model, beta, mu, search.orbits);
      w.row({mu.name, rep.calabi_deviation, rep.max_action_deviation});
      worst = std::max({worst, rep.calabi_deviation, rep.max_action_deviation});
    }
    r << "primitive perturbations: max deviation " << worst << "\n";
    ctx.check("Cal and mean actions independent of the primitive",
              worst <= cfg.number("tolerances.perturbation"));
  }
}

// ---- verify-all -----------------------------------------------------------------------------

void verify_all(Context& ctx) {
  verify::SuiteOptions o;
  o.seed = ctx.cfg.seed();
  o.output_dir = ctx.dir;
  for (double id : ctx.cfg.numbers("params.criteria")) {
    if (id != std::floor(id) || id < 1 || id > verify::kInProcessCriteria)
      throw ConfigError("params.criteria", "criterion ids are integers 1..11");
    o.only.push_back(static_cast<int>(id));
  }
  const auto results = verify::run_suite(o);
  {
    auto out = ctx.open("summary.csv");
    verify::write_summary_csv(out, results);
  }
  std::ofstream timing(ctx.dir / "timings.txt", std::ios::binary);
  for (const auto& res : results) {
    ctx.report << verify::summary_line(res) << "\n";
    timing << res.id << " " << res.seconds << " " << res.time_limit << "\n";
    ctx.result.assertions.push_back({std::to_string(res.id) + " " + res.name, res.ok()});
  }
  for (const auto& e : fs::directory_iterator(ctx.dir))
    if (e.path().extension() == ".csv" && e.path().filename() != "summary.csv")
      ctx.result.artifacts.push_back(e.path());
}

}  // namespace

RunResult run(const ExperimentConfig& cfg, const fs::path& output_dir, std::ostream& report) {
  fs::create_directories(output_dir);
  config::write_resolved(cfg, output_dir);
  Context ctx{cfg, output_dir, report, {}};
  const std::string& e = cfg.experiment();
  if (e == "ellipsoid-report") ellipsoid_report(ctx);
  else if (e == "flow-sim") flow_sim(ctx);
  else if (e == "inflate-check") inflate_check(ctx);
  else if (e == "spectrum") spectrum_run(ctx);
  else if (e == "calabi") calabi_run(ctx);
  else if (e == "verify-all") verify_all(ctx);
  else throw ConfigError("experiment", "unknown experiment '" + e + "'");
  std::sort(ctx.result.artifacts.begin(), ctx.result.artifacts.end());
  report << (ctx.result.passed() ? "ALL ASSERTIONS PASSED" : "SOME ASSERTIONS FAILED") << "\n";
  return ctx.result;
}

}  // namespace reeb::experiments
