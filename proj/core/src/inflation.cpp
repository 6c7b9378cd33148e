#include "reeblab/inflation.hpp"

#include "reeblab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace reeb::inflation {

namespace {

constexpr double kQuadTol = 1e-13;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw InvalidInput(std::string(what) + " must be positive and finite (got " + fmt(x) + ")");
}

}  // namespace

// ---- profiles ------------------------------------------------------------------------

ScalarProfile plateau_bump(double s0) {
  require_positive(s0, "plateau_bump: s0");
  const double w = 0.25 * s0;  // ramp width
  ScalarProfile z;
  z.name = "plateau-bump";
  z.lo = 0.0;
  z.hi = s0;
  z.knots = {s0 / 8.0, 3.0 * s0 / 8.0, 5.0 * s0 / 8.0, 7.0 * s0 / 8.0};
  z.value = [s0, w](double s) {
    if (s <= 0.0 || s >= s0) return 0.0;
    const double m = std::min(s, s0 - s);
    return smoothstep5((m - s0 / 8.0) / w);
  };
  z.derivative = [s0, w](double s) {
    if (s <= 0.0 || s >= s0) return 0.0;
    if (s <= 0.5 * s0) return smoothstep5_derivative((s - s0 / 8.0) / w) / w;
    return -smoothstep5_derivative((s0 - s - s0 / 8.0) / w) / w;
  };
  return z;
}

ScalarProfile smooth_cutoff(double r0) {
  require_positive(r0, "smooth_cutoff: r0");
  const double a = r0 / 3.0;
  const double w = 0.5 * r0;
  ScalarProfile b;
  b.name = "quintic-cutoff";
  b.lo = 0.0;
  b.hi = r0;
  b.knots = {a, a + w};
  b.value = [a, w](double r) { return smoothstep5((r - a) / w); };
  b.derivative = [a, w](double r) { return smoothstep5_derivative((r - a) / w) / w; };
  return b;
}

void validate_bump(const ScalarProfile& zeta, double s0, int n) {
  require_positive(s0, "bump: s0");
  if (!zeta.value) throw InvalidInput("bump: no value function");
  const double edge = 0.01 * s0;
  double peak = 0.0;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = s0 * i / (n - 1);
    const double v = zeta(s);
    peak = std::max(peak, v);
    if (!(v >= 0.0)) throw InvalidInput("bump: zeta < 0 at s=" + fmt(s));
    if ((s <= edge || s >= s0 - edge) && v != 0.0)
      throw InvalidInput("bump: zeta must vanish near 0 and s0 (s=" + fmt(s) + ")");
    if (std::abs(v - zeta(s0 - s)) > 1e-12)
      throw InvalidInput("bump: zeta(s) != zeta(s0 - s) at s=" + fmt(s));
    if (s <= 0.5 * s0 && i > 0 && v < prev - 1e-14)
      throw InvalidInput("bump: zeta decreasing on [0, s0/2] at s=" + fmt(s));
    prev = v;
  }
  if (peak == 0.0) throw InvalidInput("bump: zeta is identically zero");
}

void validate_cutoff(const ScalarProfile& beta, double r0, int n) {
  require_positive(r0, "cutoff: r0");
  if (!beta.value || !beta.derivative) throw InvalidInput("cutoff: value and derivative required");
  const double ramp_end = beta.knots.empty() ? 2.0 * r0 / 3.0 : beta.knots.back();
  for (int i = 0; i < n; ++i) {
    const double r = r0 * i / n;  // [0, r0)
    const double v = beta(r);
    const double d = beta.derivative(r);
    if (v < 0.0 || v > 1.0) throw InvalidInput("cutoff: beta outside [0,1] at r=" + fmt(r));
    if (r <= r0 / 3.0 && v != 0.0) throw InvalidInput("cutoff: beta != 0 on [0, r0/3] at r=" + fmt(r));
    if (r >= ramp_end && v != 1.0) throw InvalidInput("cutoff: beta != 1 past the ramp at r=" + fmt(r));
    if (d < 0.0 || d > 4.0 / r0 + 1e-12)
      throw InvalidInput("cutoff: beta' = " + fmt(d) + " outside [0, 4/r0] at r=" + fmt(r));
  }
}

double delta_from_delta_bar(const ScalarProfile& zeta, double s0, double delta_bar) {
  // Integrating exp(g) - 1 keeps full relative accuracy for small dbar.
  auto f = [&](double s) { return std::expm1(delta_bar * zeta(s)); };
  return quad(f, 0.0, s0, kQuadTol, zeta.knots);
}

double solve_delta_bar(const ScalarProfile& zeta, double s0, double delta) {
  require_positive(s0, "solve_delta_bar: s0");
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw InvalidInput("solve_delta_bar: delta must be nonnegative (got " + fmt(delta) + ")");
  if (delta == 0.0) return 0.0;
  const double mass = quad(zeta.value, 0.0, s0, kQuadTol, zeta.knots);
  if (!(mass > 0.0)) throw InvalidInput("solve_delta_bar: zeta is identically zero");

  auto F = [&](double d) { return delta_from_delta_bar(zeta, s0, d) - delta; };
  // exp(d zeta) - 1 >= d zeta gives F(delta/mass) >= 0.
  double hi = delta / mass;
  while (F(hi) < 0.0) hi *= 2.0;
  double d = bisect_root(F, 0.0, hi, 1e-12);
  const double slope = quad([&](double s) { return zeta(s) * std::exp(d * zeta(s)); }, 0.0, s0,
                            kQuadTol, zeta.knots);
  d -= F(d) / slope;
  return d;
}

// ---- tube normal form ----------------------------------------------------------------

void validate(const TubeChart& tube) {
  require_positive(tube.T, "tube: T");
  require_positive(tube.r0, "tube: r0");
  if (tube.q == 0) throw InvalidInput("tube: q must be nonzero");
  if (std::gcd(std::abs(tube.p), std::abs(tube.q)) != 1)
    throw InvalidInput("tube: gcd(|p|,|q|) must be 1");
}

flow::ChartVectorField model_tube_field(const TubeChart& tube) {
  validate(tube);
  flow::ChartVectorField f;
  f.name = "tube-normal-form";
  f.periods = {tube.T, 0.0, kTwoPi};
  const double w = kTwoPi * tube.rho / tube.T;
  f.velocity = [w](const Point&) { return Point{1.0, 0.0, w}; };
  const double r0 = tube.r0;
  f.inside = [r0](const Point& x) { return x[1] >= 0.0 && x[1] < r0; };
  return f;
}

Point nice_form(const TubeChart& tube, const Point& x) {
  const double r2 = x[1] * x[1];
  return {1.0 - kPi * tube.rho * r2 / tube.T, 0.0, 0.5 * r2};
}

flow::Section tube_surface_section(const TubeChart& tube) {
  validate(tube);
  const double q = tube.q, p = tube.p, tb = tube.theta_B, T = tube.T;
  auto defect = [=](const Point& x) { return q * (x[2] - kTwoPi * tb) - kTwoPi * p * x[0] / T; };
  flow::Section sec;
  sec.value = [defect](const Point& x) { return std::sin(defect(x)); };
  sec.gate = [defect](const Point& x) { return std::cos(defect(x)); };
  return sec;
}

// ---- inflation family ----------------------------------------------------------------

InflationProfile make_profile(double s0, double delta, double r0) {
  return make_profile(plateau_bump(s0), smooth_cutoff(r0), s0, delta, r0);
}

InflationProfile make_profile(ScalarProfile zeta, ScalarProfile beta, double s0, double delta,
                              double r0) {
  validate_bump(zeta, s0);
  validate_cutoff(beta, r0);
  InflationProfile p;
  p.s0 = s0;
  p.delta = delta;
  p.r0 = r0;
  p.delta_bar = solve_delta_bar(zeta, s0, delta);
  p.zeta = std::move(zeta);
  p.beta = std::move(beta);
  return p;
}

LiouvilleModel radial_liouville(double radius) {
  require_positive(radius, "radial_liouville: radius");
  LiouvilleModel m;
  m.name = "radial";
  m.radius = radius;
  m.primitive = [](double x, double y) { return std::array<double, 2>{-0.5 * y, 0.5 * x}; };
  m.field = [](double x, double y) { return std::array<double, 2>{0.5 * x, 0.5 * y}; };
  return m;
}

namespace {

ChartModel sigma0_chart(const InflationProfile& pr, const LiouvilleModel& lv) {
  ChartModel c;
  c.kind = SlabChart::OverSigma0;
  const double db = pr.delta_bar;
  const ScalarProfile zeta = pr.zeta;
  const auto prim = lv.primitive;
  const auto X = lv.field;
  c.form = [db, zeta, prim](const Point& x) {
    const double e = std::exp(db * zeta(x[0]));
    const auto l = prim(x[1], x[2]);
    return Point{e, e * l[0], e * l[1]};
  };
  c.reeb.name = "slab-over-sigma0";
  c.reeb.velocity = [db, zeta, X](const Point& x) {
    const double e = std::exp(-db * zeta(x[0]));
    const double k = db * zeta.derivative(x[0]);
    const auto v = X(x[1], x[2]);
    return Point{e, -e * k * v[0], -e * k * v[1]};
  };
  const double R2 = lv.radius * lv.radius;
  c.reeb.inside = [R2](const Point& x) { return x[1] * x[1] + x[2] * x[2] < R2; };
  return c;
}

ChartModel tube_chart(const InflationProfile& pr, const TubeChart& tube) {
  ChartModel m;
  m.kind = SlabChart::OverBoundaryTube;
  const double db = pr.delta_bar;
  const ScalarProfile zeta = pr.zeta;
  const ScalarProfile beta = pr.beta;
  const double rs = tube.rho_surface();
  const double T = tube.T;
  auto h = [rs, T](double r) { return 1.0 - kPi * rs * r * r / T; };
  m.form = [=](const Point& x) {
    const double e = std::exp(db * zeta(x[0]) * beta(x[2]));
    return Point{e, e * h(x[2]), 0.0};
  };
  m.reeb.name = "slab-over-boundary-tube";
  m.reeb.periods = {0.0, std::abs(tube.q) * T, 0.0};
  m.reeb.velocity = [=](const Point& x) {
    const double s = x[0], r = x[2];
    const double z = zeta(s), b = beta(r);
    const double gs = db * zeta.derivative(s) * b;  // dg/ds
    const double gr = db * z * beta.derivative(r);  // dg/dr
    const double e = std::exp(-db * z * b);
    if (gs == 0.0 && gr == 0.0) return Point{e, 0.0, 0.0};
    const double c = kTwoPi * rs * r / T;  // -h'(r)
    const double hr = h(r);
    return Point{e * (c - hr * gr) / c, e * gr / c, e * hr * gs / c};
  };
  const double r0 = tube.r0;
  m.reeb.inside = [r0](const Point& x) { return x[2] > 0.0 && x[2] < r0; };
  return m;
}

}  // namespace

PositivityReport check_ds_positivity(const InflationProfile& profile, const TubeChart& tube,
                                     const GridResolution& grid) {
  validate(tube);
  if (grid.s < 2 || grid.r < 2 || grid.t < 1)
    throw InvalidInput("positivity grid needs at least 2 x 2 x 1 points");
  const double rs = tube.rho_surface();
  if (rs == 0.0) throw InvalidInput("positivity: rotation number relative to the surface is zero");
  PositivityReport rep;
  rep.min_coefficient = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.s; ++i) {
    const double s = profile.s0 * i / (grid.s - 1);
    const double z = profile.zeta(s);
    for (int j = 1; j <= grid.r; ++j) {
      const double r = profile.r0 * j / (grid.r + 1);  // interior of (0, r0)
      const double h = 1.0 - kPi * rs * r * r / tube.T;
      const double c = kTwoPi * rs * r / tube.T;
      const double v = 1.0 - profile.delta_bar * z * profile.beta.derivative(r) * h / c;
      if (v < rep.min_coefficient) {
        rep.min_coefficient = v;
        rep.at_s = s;
        rep.at_r = r;
      }
    }
  }
  rep.positive = rep.min_coefficient > 0.0;
  return rep;
}

double max_admissible_delta(double s0, double r0, const TubeChart& tube) {
  validate(tube);
  const double rs = tube.rho_surface();
  if (rs == 0.0) throw InvalidInput("max_admissible_delta: rotation number relative to the surface is zero");
  const ScalarProfile beta = smooth_cutoff(r0);
  // Positivity reads 1 - dbar zeta k(r) > 0 with k = beta' h / c and max zeta = 1.
  double kmax = 0.0;
  const int n = 4096;
  for (int j = 1; j <= n; ++j) {
    const double r = r0 * j / (n + 1);
    const double h = 1.0 - kPi * rs * r * r / tube.T;
    const double c = kTwoPi * rs * r / tube.T;
    kmax = std::max(kmax, beta.derivative(r) * h / c);
  }
  if (kmax == 0.0) return std::numeric_limits<double>::infinity();
  return delta_from_delta_bar(plateau_bump(s0), s0, 1.0 / kmax);
}

ChartModel lambda_delta_chart(SlabChart kind, const InflationProfile& profile,
                              const TubeChart* tube, const LiouvilleModel& liouville) {
  if (kind == SlabChart::OverSigma0) return sigma0_chart(profile, liouville);
  if (!tube) throw InvalidInput("lambda_delta_chart: the boundary-tube chart needs a TubeChart");
  validate(*tube);
  if (tube->rho_surface() == 0.0)
    throw InvalidInput("lambda_delta_chart: rotation number relative to the surface is zero");
  const PositivityReport pos = check_ds_positivity(profile, *tube);
  if (!pos.positive) {
    std::ostringstream msg;
    msg << "lambda_delta_chart: delta=" << profile.delta
        << " too large, ds coefficient of the Reeb field is " << pos.min_coefficient
        << " at (s, r) = (" << pos.at_s << ", " << pos.at_r << "); largest admissible delta is "
        << max_admissible_delta(profile.s0, profile.r0, *tube);
    throw InvalidInput(msg.str());
  }
  return tube_chart(profile, *tube);
}

ChartSampler default_sampler(SlabChart kind, const InflationProfile& profile,
                             const TubeChart* tube, const LiouvilleModel& liouville) {
  const double s0 = profile.s0;
  if (kind == SlabChart::OverSigma0) {
    const double R = liouville.radius;
    return [s0, R](const std::array<double, 3>& u) {
      const double rad = 0.95 * R * std::sqrt(u[1]);
      return Point{s0 * u[0], rad * std::cos(kTwoPi * u[2]), rad * std::sin(kTwoPi * u[2])};
    };
  }
  if (!tube) throw InvalidInput("default_sampler: the boundary-tube chart needs a TubeChart");
  const double L = std::abs(tube->q) * tube->T;
  const double r0 = tube->r0;
  return [s0, L, r0](const std::array<double, 3>& u) {
    return Point{s0 * u[0], L * u[1], r0 * (0.02 + 0.96 * u[2])};
  };
}

ContactAudit audit_contact_condition(const ChartModel& chart, const ChartSampler& sampler,
                                     std::size_t samples, std::uint64_t seed,
                                     double normalization_tol, double kernel_tol,
                                     double fd_step) {
  std::mt19937_64 rng(seed);
  ContactAudit a;
  a.samples = samples;
  for (std::size_t n = 0; n < samples; ++n) {
    const Point x = sampler({uniform01(rng), uniform01(rng), uniform01(rng)});
    const Point R = chart.reeb.velocity(x);
    const Point l = chart.form(x);
    a.max_normalization_error =
        std::max(a.max_normalization_error, std::abs(l[0] * R[0] + l[1] * R[1] + l[2] * R[2] - 1.0));
    // J[i][j] = d lambda_j / d x_i
    double J[3][3];
    for (int i = 0; i < 3; ++i) {
      Point xp = x, xm = x;
      xp[i] += fd_step;
      xm[i] -= fd_step;
      const Point lp = chart.form(xp), lm = chart.form(xm);
      for (int j = 0; j < 3; ++j) J[i][j] = (lp[j] - lm[j]) / (2.0 * fd_step);
    }
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) v += R[i] * (J[i][j] - J[j][i]);
      a.max_kernel_error = std::max(a.max_kernel_error, std::abs(v));
    }
  }
  a.passed = a.max_normalization_error <= normalization_tol && a.max_kernel_error <= kernel_tol;
  return a;
}

namespace {

flow::IntegratorOptions traversal_options() {
  flow::IntegratorOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-13;
  o.event_tol = 1e-12;
  o.max_step = 0.02;
  o.min_step = 1e-14;
  o.stop_at_first_event = true;
  return o;
}

Traversal run_to_level(const flow::ChartVectorField& field, const Point& start, double level,
                       double direction, double max_time) {
  flow::Section sec;
  sec.value = [level, direction](const Point& x) { return direction * (x[0] - level); };
  const flow::TrajectorySummary sum =
      flow::integrate(field, start, max_time, &sec, traversal_options());
  if (sum.events.empty()) {
    if (sum.exited_chart)
      throw InvalidInput("slab traversal left the chart '" + field.name + "' at t=" +
                         fmt(sum.total_time) + "; delta is out of range for this start point");
    throw NumericalFailure("slab traversal did not reach level s=" + fmt(level));
  }
  return {sum.events.front().time, sum.events.front().point};
}

}  // namespace

Traversal slab_traversal(const InflationProfile& profile, double x, double y,
                         const LiouvilleModel& liouville) {
  const ChartModel c = sigma0_chart(profile, liouville);
  return run_to_level(c.reeb, {0.0, x, y}, profile.s0, 1.0,
                      4.0 * (profile.s0 + profile.delta) + 1.0);
}

double slab_traversal_time(const InflationProfile& profile, double x, double y,
                           const LiouvilleModel& liouville) {
  return slab_traversal(profile, x, y, liouville).time;
}

Traversal half_traversal(const InflationProfile& profile, double x, double y, bool backward,
                         const LiouvilleModel& liouville) {
  ChartModel c = sigma0_chart(profile, liouville);
  const double limit = 4.0 * (profile.s0 + profile.delta) + 1.0;
  if (!backward) return run_to_level(c.reeb, {0.0, x, y}, 0.5 * profile.s0, 1.0, limit);
  auto forward = c.reeb.velocity;
  c.reeb.velocity = [forward](const Point& p) {
    const Point v = forward(p);
    return Point{-v[0], -v[1], -v[2]};
  };
  return run_to_level(c.reeb, {profile.s0, x, y}, 0.5 * profile.s0, -1.0, limit);
}

Traversal tube_slab_traversal(const InflationProfile& profile, const TubeChart& tube, double tt,
                              double r) {
  const ChartModel c = lambda_delta_chart(SlabChart::OverBoundaryTube, profile, &tube);
  return run_to_level(c.reeb, {0.0, tt, r}, profile.s0, 1.0,
                      4.0 * (profile.s0 + profile.delta) + 1.0);
}

// ---- volumes and budget ----------------------------------------------------------------

SlabVolume slab_volume(const SlabRegion& slab) {
  require_positive(slab.A0, "slab_volume: A0");
  const InflationProfile& p = slab.profile;
  SlabVolume v;
  const double db = p.delta_bar;
  v.volume = 0.5 * slab.A0 *
             quad([&](double s) { return std::expm1(2.0 * db * p.zeta(s)); }, 0.0, p.s0, kQuadTol,
                  p.zeta.knots);
  v.lower_bound = p.delta * slab.A0;
  v.exceeds_lower_bound = v.volume > v.lower_bound;
  v.step_closed_form = slab.A0 * (p.delta + p.delta * p.delta / p.s0);
  v.smoothing_budget = 0.5 * slab.A0 * std::expm1(db) * p.delta;
  return v;
}

double slab_volume_monte_carlo(const SlabRegion& slab, std::size_t samples, std::uint64_t seed) {
  require_positive(slab.A0, "slab_volume_monte_carlo: A0");
  if (samples == 0) throw InvalidInput("slab_volume_monte_carlo: need at least one sample");
  const InflationProfile& p = slab.profile;
  if (p.delta_bar == 0.0) return 0.0;
  std::mt19937_64 rng(seed);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = p.s0 * uniform01(rng);
    const double sigma = p.delta_bar * uniform01(rng);
    if (sigma < p.delta_bar * p.zeta(s)) acc += std::exp(2.0 * sigma);
  }
  return slab.A0 * p.s0 * p.delta_bar * acc / static_cast<double>(samples);
}

BudgetReport inflation_budget(double F, double epsilon, double delta, double A0, double V) {
  if (!(F >= 0.0) || !(epsilon >= 0.0)) throw InvalidInput("inflation_budget: F and epsilon must be >= 0");
  require_positive(delta, "inflation_budget: delta");
  require_positive(A0, "inflation_budget: A0");
  require_positive(V, "inflation_budget: V");
  const double rate = F + epsilon;
  auto margin = [=](double d) { return 1.0 + 2.0 * A0 * d / V - std::exp(2.0 * d * rate); };
  BudgetReport b;
  b.lhs = std::exp(2.0 * delta * rate);
  b.rhs = 1.0 + 2.0 * A0 * delta / V;
  b.admissible = b.lhs < b.rhs;
  b.any_admissible = rate < A0 / V;
  if (!b.any_admissible) return b;
  if (rate == 0.0) {
    b.largest_delta = std::numeric_limits<double>::infinity();
    return b;
  }
  // margin is concave with margin(0) = 0 and margin'(0) > 0, so it has one positive root.
  double hi = 1.0 / rate;
  while (margin(hi) > 0.0) hi *= 2.0;
  b.largest_delta = bisect_root(margin, hi * 1e-12, hi, 1e-14 * hi);
  return b;
}

// ---- very-nice isotopy -----------------------------------------------------------------

VeryNiceResult make_very_nice(const AnnulusFn& eta, int q, double T, double r0, double theta_B) {
  if (!eta) throw InvalidInput("make_very_nice: eta is empty");
  if (q == 0) throw InvalidInput("make_very_nice: q must be nonzero");
  require_positive(T, "make_very_nice: T");
  require_positive(r0, "make_very_nice: r0");
  const double L = std::abs(q) * T;
  const double h = 1e-6 * L;
  auto rate = [&](double t) { return wrap_symmetric(eta(t + h, 0.0) - eta(t - h, 0.0), 1.0) / (2.0 * h); };
  VeryNiceResult res;
  res.winding = integrate(rate, 0.0, L, 1e-7).value;
  res.p = static_cast<int>(std::lround(res.winding));
  res.residual = std::abs(res.winding - res.p);
  if (!(res.residual < 0.01))
    throw InvalidInput("make_very_nice: conormal winding " + fmt(res.winding) +
                       " is not within 0.01 of an integer");
  if (std::gcd(std::abs(res.p), std::abs(q)) != 1)
    throw InvalidInput("make_very_nice: gcd(|p|,|q|) = " +
                       std::to_string(std::gcd(std::abs(res.p), std::abs(q))) +
                       ", boundary would not be embedded");
  const ScalarProfile beta = smooth_cutoff(r0);
  const double slope = res.p / L;
  res.eta_prime = [eta, beta, slope, theta_B](double t, double r) {
    const double b = beta(r);
    return (1.0 - b) * (theta_B + slope * t) + b * eta(t, r);
  };
  return res;
}

TransversalityReport check_transversality(const AnnulusFn& eta_prime, double rot_tau, int q,
                                          double T, double r0, bool reeb_oriented, int n_t,
                                          int n_r) {
  if (q == 0) throw InvalidInput("check_transversality: q must be nonzero");
  require_positive(T, "check_transversality: T");
  if (n_t < 1 || n_r < 1) throw InvalidInput("check_transversality: empty grid");
  const double L = std::abs(q) * T;
  const double h = 1e-6 * L;
  TransversalityReport rep;
  rep.bound = rot_tau / T;
  rep.max_slope = reeb_oriented ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_t; ++i) {
    const double t = L * i / n_t;
    for (int j = 0; j < n_r; ++j) {
      const double r = r0 * j / n_r;
      const double d = (eta_prime(t + h, r) - eta_prime(t - h, r)) / (2.0 * h);
      rep.max_slope = reeb_oriented ? std::max(rep.max_slope, d) : std::min(rep.max_slope, d);
    }
  }
  rep.passed = reeb_oriented ? rep.max_slope < rep.bound : rep.max_slope > rep.bound;
  return rep;
}

}  // namespace reeb::inflation
