#include "reeblab/calabi.hpp"

#include "reeblab/csv.hpp"
#include "reeblab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

// The Boost 1.74 pchip header calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

namespace reeb::calabi {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::array<double, 2> to_xy(const Polar& p) {
  return {p.r * std::cos(p.theta), p.r * std::sin(p.theta)};
}

Polar to_polar(double x, double y) { return {std::hypot(x, y), std::atan2(y, x)}; }

}  // namespace

// ---- twist profiles --------------------------------------------------------------------

TwistProfile ideal_twist(double sign) {
  TwistProfile p;
  p.name = sign >= 0.0 ? "ideal-twist" : "flipped-twist";
  p.tau = [sign](double r) { return 2.0 * sign * (r * r - 1.0); };
  p.tau_prime = [sign](double r) { return 4.0 * sign * r; };
  return p;
}

TwistProfile smoothed_twist() {
  TwistProfile p;
  p.name = "smoothed-twist";
  constexpr double a = 0.8, w = 0.1, plateau = 0.81;
  auto sigma = [](double r) {
    const double S = smoothstep5((r - a) / w);
    return (1.0 - S) * r * r + S * plateau;
  };
  auto sigma_prime = [](double r) {
    const double u = (r - a) / w;
    const double S = smoothstep5(u);
    const double dS = smoothstep5_derivative(u) / w;
    return (1.0 - S) * 2.0 * r + dS * (plateau - r * r);
  };
  p.tau = [sigma](double r) { return 2.0 * (sigma(r) - 1.0); };
  p.tau_prime = [sigma_prime](double r) { return 2.0 * sigma_prime(r); };
  p.knots = {a, a + w};
  return p;
}

TwistProfile constant_twist(double angle) {
  TwistProfile p;
  p.name = "rigid-rotation";
  p.tau = [angle](double) { return angle; };
  p.tau_prime = [](double) { return 0.0; };
  return p;
}

TwistProfile spline_twist(const std::vector<double>& r, const std::vector<double>& tau) {
  if (r.size() != tau.size() || r.size() < 4)
    throw InvalidInput("spline_twist: need at least four (r, tau) knots of equal count");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1])) throw InvalidInput("spline_twist: knot radii must increase");
  using Spline = boost::math::interpolators::pchip<std::vector<double>>;
  // Zero end slopes keep the profile constant (a rigid rotation) outside the knot range.
  auto spline = std::make_shared<Spline>(std::vector<double>(r), std::vector<double>(tau), 0.0, 0.0);
  const double lo = r.front(), hi = r.back();
  TwistProfile p;
  p.name = "spline-twist";
  p.tau = [spline, lo, hi](double x) { return (*spline)(std::clamp(x, lo, hi)); };
  p.tau_prime = [spline, lo, hi](double x) {
    return (x <= lo || x >= hi) ? 0.0 : spline->prime(x);
  };
  p.knots = r;
  return p;
}

// ---- models ------------------------------------------------------------------------------

SurfaceMapModel twist_map(TwistProfile profile, Domain domain, double r_in,
                          std::optional<double> theta_B) {
  if (!profile.tau || !profile.tau_prime) throw InvalidInput("twist_map: profile incomplete");
  if (domain == Domain::Disk) r_in = 0.0;
  if (domain == Domain::Annulus && !(r_in > 0.0 && r_in < 1.0))
    throw InvalidInput("twist_map: annulus needs 0 < r_in < 1");
  SurfaceMapModel m;
  m.name = profile.name;
  m.domain = domain;
  m.r_in = r_in;
  const ScalarFn tau = profile.tau, dtau = profile.tau_prime;
  m.map = [tau](const Polar& x) { return Polar{x.r, x.theta + kTwoPi * tau(x.r)}; };
  m.inverse = [tau](const Polar& x) { return Polar{x.r, x.theta - kTwoPi * tau(x.r)}; };
  m.jacobian = [dtau](const Polar& x) { return PolarJacobian{1.0, 0.0, kTwoPi * dtau(x.r), 1.0}; };
  m.theta_B = theta_B.value_or(tau(1.0));
  m.theta_inner = domain == Domain::Annulus ? tau(r_in) : 0.0;
  m.twist = std::move(profile);
  return m;
}

SurfaceMapModel inverse_model(const SurfaceMapModel& model) {
  if (model.twist) {
    TwistProfile neg = *model.twist;
    const ScalarFn tau = neg.tau, dtau = neg.tau_prime;
    neg.name = model.twist->name + "-inverse";
    neg.tau = [tau](double r) { return -tau(r); };
    neg.tau_prime = [dtau](double r) { return -dtau(r); };
    SurfaceMapModel inv = twist_map(std::move(neg), model.domain, model.r_in, -model.theta_B);
    inv.theta_inner = -model.theta_inner;
    inv.exactness_asserted = model.exactness_asserted;
    return inv;
  }
  SurfaceMapModel inv = model;
  inv.name = model.name + "-inverse";
  std::swap(inv.map, inv.inverse);
  inv.jacobian = nullptr;
  inv.theta_B = -model.theta_B;
  inv.theta_inner = -model.theta_inner;
  return inv;
}

SurfaceMapModel shift_lift(const SurfaceMapModel& model, int n) {
  SurfaceMapModel m = model;
  m.theta_B += n;
  m.name = model.name + "+" + std::to_string(n);
  return m;
}

SurfaceMapModel collapse_to_disk(const SurfaceMapModel& annulus) {
  if (annulus.domain != Domain::Annulus || !annulus.twist)
    throw InvalidInput("collapse_to_disk: needs an annulus twist model");
  const double ri2 = annulus.r_in * annulus.r_in;
  const ScalarFn tau = annulus.twist->tau, dtau = annulus.twist->tau_prime;
  auto radius = [ri2](double rho) { return std::sqrt(ri2 + rho * rho * (1.0 - ri2)); };
  TwistProfile p;
  p.name = annulus.twist->name + "-collapsed";
  p.tau = [=](double rho) { return tau(radius(rho)); };
  p.tau_prime = [=](double rho) {
    const double r = radius(rho);
    return dtau(r) * rho * (1.0 - ri2) / r;
  };
  for (double k : annulus.twist->knots)
    if (k > annulus.r_in) p.knots.push_back(std::sqrt((k * k - ri2) / (1.0 - ri2)));
  return twist_map(std::move(p), Domain::Disk, 0.0, annulus.theta_B);
}

PolarJacobian jacobian(const SurfaceMapModel& model, const Polar& x) {
  if (model.jacobian) return model.jacobian(x);
  const double h = 1e-6;
  const Polar rp = model.map({x.r + h, x.theta}), rm = model.map({x.r - h, x.theta});
  const Polar tp = model.map({x.r, x.theta + h}), tm = model.map({x.r, x.theta - h});
  return {(rp.r - rm.r) / (2 * h), (tp.r - tm.r) / (2 * h),
          wrap_symmetric(rp.theta - rm.theta, kTwoPi) / (2 * h),
          wrap_symmetric(tp.theta - tm.theta, kTwoPi) / (2 * h)};
}

namespace {

Polar sample_point(const SurfaceMapModel& m, std::mt19937_64& rng) {
  // Uniform with respect to omega.
  const double ri2 = m.r_in * m.r_in;
  const double r = std::sqrt(ri2 + uniform01(rng) * (1.0 - ri2));
  return {r, kTwoPi * uniform01(rng)};
}

}  // namespace

ModelCheck check_model(const SurfaceMapModel& model, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModelCheck c;
  for (std::size_t i = 0; i < samples; ++i) {
    Polar x = sample_point(model, rng);
    x.r = std::max(x.r, 1e-3);
    const PolarJacobian J = jacobian(model, x);
    const Polar y = model.map(x);
    c.max_area_defect =
        std::max(c.max_area_defect, std::abs((J.rr * J.tt - J.rt * J.tr) * y.r / x.r - 1.0));
    const Polar back = model.inverse(y);
    const auto a = to_xy(back), b = to_xy(x);
    c.max_inverse_defect = std::max(c.max_inverse_defect, std::hypot(a[0] - b[0], a[1] - b[1]));
  }
  // Rigidity on the collars of width 0.05.
  std::vector<std::pair<double, double>> collars{{0.95, model.theta_B}};
  if (model.domain == Domain::Annulus) collars.push_back({model.r_in, model.theta_inner});
  for (const auto& [r_start, angle] : collars) {
    for (int i = 0; i <= 20; ++i) {
      const double r = r_start + 0.05 * i / 20.0;
      for (int j = 0; j < 16; ++j) {
        const Polar x{r, kTwoPi * j / 16.0};
        const Polar y = model.map(x);
        const Polar z{r, x.theta + kTwoPi * angle};
        const auto a = to_xy(y), b = to_xy(z);
        c.max_rigidity_defect =
            std::max(c.max_rigidity_defect, std::hypot(a[0] - b[0], a[1] - b[1]));
      }
    }
  }
  c.area_preserving = c.max_area_defect <= 1e-10;
  c.boundary_rigid = c.max_rigidity_defect <= 1e-12;
  return c;
}

// ---- perturbations and primitives -----------------------------------------------------------

Perturbation zero_perturbation() {
  Perturbation p;
  p.name = "zero";
  p.value = [](const Polar&) { return 0.0; };
  p.d_r = p.value;
  p.d_theta = p.value;
  return p;
}

Perturbation cosine_perturbation(double amplitude) {
  Perturbation p;
  p.name = "cosine";
  const double A = amplitude;
  p.value = [A](const Polar& x) {
    const double s = 1.0 - x.r * x.r;
    return A * x.r * x.r * s * s * std::cos(x.theta);
  };
  p.d_r = [A](const Polar& x) {
    const double r = x.r, s = 1.0 - r * r;
    return A * (2.0 * r * s * s - 4.0 * r * r * r * s) * std::cos(x.theta);
  };
  p.d_theta = [A](const Polar& x) {
    const double s = 1.0 - x.r * x.r;
    return -A * x.r * x.r * s * s * std::sin(x.theta);
  };
  return p;
}

Perturbation random_bump(std::uint64_t seed, double r_in) {
  std::mt19937_64 rng(seed);
  const double w = 0.1 + 0.1 * uniform01(rng);
  const double lo = r_in > 0.0 ? r_in + 0.05 + w : 0.0;
  const double hi = 0.9 - w;
  if (!(hi > lo)) throw InvalidInput("random_bump: annulus too thin for a bump");
  const double rc = lo + (hi - lo) * uniform01(rng);
  const double tc = kTwoPi * uniform01(rng);
  const double A = uniform01(rng) - 0.5;
  const double cx = rc * std::cos(tc), cy = rc * std::sin(tc);

  // Cartesian value and gradient of A exp(-1/(1 - t^2)), t = |x - c| / w.
  auto eval = [=](const Polar& p) {
    const double x = p.r * std::cos(p.theta), y = p.r * std::sin(p.theta);
    const double dx = x - cx, dy = y - cy;
    const double t2 = (dx * dx + dy * dy) / (w * w);
    if (t2 >= 1.0) return std::array<double, 3>{0.0, 0.0, 0.0};
    const double s = 1.0 - t2;
    const double v = A * std::exp(-1.0 / s);
    const double k = -2.0 * v / (w * w * s * s);
    return std::array<double, 3>{v, k * dx, k * dy};
  };
  Perturbation p;
  p.name = "bump-" + std::to_string(seed);
  p.value = [eval](const Polar& x) { return eval(x)[0]; };
  p.d_r = [eval](const Polar& x) {
    const auto e = eval(x);
    return e[1] * std::cos(x.theta) + e[2] * std::sin(x.theta);
  };
  p.d_theta = [eval](const Polar& x) {
    const auto e = eval(x);
    return x.r * (-e[1] * std::sin(x.theta) + e[2] * std::cos(x.theta));
  };
  return p;
}

PrimitiveData standard_primitive(const SurfaceMapModel& model) {
  const double c = model.density();
  const double ri2 = model.r_in * model.r_in;
  PrimitiveData b;
  b.name = "standard";
  b.coeff = [c, ri2](const Polar& x) {
    return std::array<double, 2>{0.0, 0.5 * c * (x.r * x.r - ri2)};
  };
  b.boundary_B = true;
  b.boundary_other = true;
  return b;
}

PrimitiveData perturbed_primitive(const SurfaceMapModel& model, const PrimitiveData& beta,
                                  const Perturbation& mu) {
  std::vector<double> radii{1.0};
  if (model.domain == Domain::Annulus) radii.push_back(model.r_in);
  for (double r : radii) {
    for (int j = 0; j < 256; ++j) {
      const Polar x{r, kTwoPi * j / 256.0};
      const double worst =
          std::max({std::abs(mu.value(x)), std::abs(mu.d_r(x)), std::abs(mu.d_theta(x))});
      if (worst > 1e-12)
        throw InvalidInput("perturbed_primitive: mu '" + mu.name +
                           "' or its derivative does not vanish on the boundary circle r=" +
                           fmt(r) + " (|.|=" + fmt(worst) + ")");
    }
  }
  PrimitiveData out = beta;
  out.name = beta.name + "+d(" + mu.name + ")";
  const auto base = beta.coeff;
  const auto dr = mu.d_r, dt = mu.d_theta;
  out.coeff = [base, dr, dt](const Polar& x) {
    const auto b = base(x);
    return std::array<double, 2>{b[0] + dr(x), b[1] + dt(x)};
  };
  return out;
}

std::array<double, 2> pullback_difference(const SurfaceMapModel& model, const PrimitiveData& beta,
                                          const Polar& x) {
  const Polar y = model.map(x);
  const PolarJacobian J = jacobian(model, x);
  const auto by = beta.coeff(y);
  const auto bx = beta.coeff(x);
  return {by[0] * J.rr + by[1] * J.tr - bx[0], by[0] * J.rt + by[1] * J.tt - bx[1]};
}

namespace {

double closed_defect(const SurfaceMapModel& model, const PrimitiveData& beta, const Polar& x) {
  // Fourth-order central differences; steep perturbations defeat the second-order stencil.
  const double h = 2e-4;
  auto d = [&](auto g) { return (8.0 * (g(h) - g(-h)) - (g(2 * h) - g(-2 * h))) / (12.0 * h); };
  const double dgt_dr =
      d([&](double e) { return pullback_difference(model, beta, {x.r + e, x.theta})[1]; });
  const double dgr_dt =
      d([&](double e) { return pullback_difference(model, beta, {x.r, x.theta + e})[0]; });
  // Relative to the partials themselves, so a steep but exact primitive is not flagged.
  return std::abs(dgt_dr - dgr_dt) / (1.0 + std::max(std::abs(dgt_dr), std::abs(dgr_dt)));
}

double closed_tolerance(const SurfaceMapModel& model) { return model.jacobian ? 1e-8 : 1e-5; }

Polar interior_sample(const SurfaceMapModel& model, std::mt19937_64& rng) {
  Polar x = sample_point(model, rng);
  x.r = std::clamp(x.r, model.r_min() + 1e-3, 1.0 - 1e-3);
  return x;
}

}  // namespace

PrimitiveCheck check_primitive(const SurfaceMapModel& model, const PrimitiveData& beta,
                               std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double c = model.density();
  const double h = 1e-5;
  PrimitiveCheck out;
  for (std::size_t i = 0; i < samples; ++i) {
    const Polar x = interior_sample(model, rng);
    const double dbt_dr =
        (beta.coeff({x.r + h, x.theta})[1] - beta.coeff({x.r - h, x.theta})[1]) / (2 * h);
    const double dbr_dt =
        (beta.coeff({x.r, x.theta + h})[0] - beta.coeff({x.r, x.theta - h})[0]) / (2 * h);
    out.max_d_beta_defect = std::max(out.max_d_beta_defect, std::abs(dbt_dr - dbr_dt - c * x.r));
    out.max_closed_defect = std::max(out.max_closed_defect, closed_defect(model, beta, x));
  }
  out.ok = out.max_d_beta_defect <= 1e-8 && out.max_closed_defect <= closed_tolerance(model);
  return out;
}

FluxReport compute_flux(const SurfaceMapModel& model, const PrimitiveData& beta) {
  FluxReport rep;
  std::mt19937_64 rng(7);
  // d(phi* beta - beta) = phi* omega - omega whatever the primitive, so probing with the
  // smooth standard primitive keeps steep perturbations from swamping the stencil.
  const PrimitiveData probe = standard_primitive(model);
  for (int i = 0; i < 200; ++i)
    rep.max_closed_defect =
        std::max(rep.max_closed_defect, closed_defect(model, probe, interior_sample(model, rng)));
  if (rep.max_closed_defect > closed_tolerance(model))
    throw NumericalFailure("compute_flux: phi* beta - beta is not closed (defect " +
                           fmt(rep.max_closed_defect) + "); the map is not symplectic");
  if (model.domain == Domain::Annulus) {
    // Period over the core circle; the integrand is periodic so the trapezoid rule is spectral.
    const double r = 0.5 * (model.r_in + 1.0);
    const int n = 512;
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
      sum += pullback_difference(model, beta, {r, kTwoPi * j / n})[1];
    rep.periods.push_back(sum * kTwoPi / n);
  }
  rep.zero = std::all_of(rep.periods.begin(), rep.periods.end(),
                         [](double p) { return std::abs(p) <= 1e-10; });
  return rep;
}

// ---- action function ------------------------------------------------------------------------

ActionFunction::ActionFunction(SurfaceMapModel model, PrimitiveData beta, Tolerances tol)
    : model_(std::move(model)), beta_(std::move(beta)), tol_(tol) {}

namespace {

// Twist knots plus a uniform grid. A sheared perturbation crosses a ray in a narrow band
// that one Gauss-Kronrod panel over the whole radius can step over.
std::vector<double> radial_knots(const SurfaceMapModel& m) {
  std::vector<double> k = m.twist ? m.twist->knots : std::vector<double>{};
  const double lo = m.r_min();
  for (int i = 1; i < 16; ++i) k.push_back(lo + (1.0 - lo) * i / 16.0);
  return k;
}

double arc_integral(const SurfaceMapModel& m, const PrimitiveData& b, double r, double t0,
                    double t1, double tol) {
  if (t0 == t1) return 0.0;
  return quad([&](double t) { return pullback_difference(m, b, {r, t})[1]; }, t0, t1, tol);
}

double radial_integral(const SurfaceMapModel& m, const PrimitiveData& b, double theta, double r0,
                       double r1, double tol) {
  if (r0 == r1) return 0.0;
  const auto knots = radial_knots(m);
  return quad([&](double s) { return pullback_difference(m, b, {s, theta})[0]; }, r0, r1, tol,
              knots);
}

}  // namespace

double ActionFunction::operator()(const Polar& x) const {
  const double th = wrap_periodic(x.theta, kTwoPi);
  return model_.theta_B + arc_integral(model_, beta_, 1.0, 0.0, th, tol_.path_tol) +
         radial_integral(model_, beta_, th, 1.0, x.r, tol_.path_tol);
}

double ActionFunction::along_circle_path(const Polar& x) const {
  const double th = wrap_periodic(x.theta, kTwoPi);
  return model_.theta_B + radial_integral(model_, beta_, 0.0, 1.0, x.r, tol_.path_tol) +
         arc_integral(model_, beta_, x.r, 0.0, th, tol_.path_tol);
}

ActionFunction compute_f_beta(const SurfaceMapModel& model, const PrimitiveData& beta,
                              FBetaReport* report, Tolerances tol, std::size_t samples,
                              std::uint64_t seed) {
  const FluxReport flux = compute_flux(model, beta);
  if (!flux.zero)
    throw InvalidInput("compute_f_beta: nonzero flux (period " + fmt(flux.periods.front()) + ")");
  ActionFunction f(model, beta, tol);
  FBetaReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Polar x = interior_sample(model, rng);
    rep.max_path_difference =
        std::max(rep.max_path_difference, std::abs(f(x) - f.along_circle_path(x)));
  }
  if (rep.max_path_difference > tol.path_agreement)
    throw NumericalFailure("compute_f_beta: path dependence " + fmt(rep.max_path_difference) +
                           " exceeds " + fmt(tol.path_agreement) +
                           " (nonzero flux or broken boundary conditions)");
  auto variation = [&](double r, double& value) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < 16; ++j) {
      const double v = f({r, kTwoPi * j / 16.0});
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    value = lo;
    return hi - lo;
  };
  rep.boundary_B_variation = variation(1.0, rep.boundary_B_value);
  if (model.domain == Domain::Annulus) {
    double v = 0.0;
    rep.boundary_inner_variation = variation(model.r_in, v);
    rep.boundary_inner_value = v;
  }
  if (report) *report = rep;
  return f;
}

double calabi_invariant(const ActionFunction& f) {
  const SurfaceMapModel& m = f.model();
  const PrimitiveData& b = f.beta();
  const double c = m.density();
  const double ri2 = m.r_in * m.r_in;
  const auto knots = radial_knots(m);
  const double inner_tol = 0.1 * f.tolerances().calabi_tol / kTwoPi;
  auto ring = [&](double theta) {
    return quad(
        [&](double s) { return pullback_difference(m, b, {s, theta})[0] * 0.5 * c * (s * s - ri2); },
        m.r_min(), 1.0, std::max(inner_tol, 1e-14), knots);
  };
  // Periodic in theta: trapezoid sums converge faster than any power.
  std::ostringstream trace;
  double prev = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> nodes;
  for (int n = 16; n <= 8192; n *= 2) {
    // Reuse the even nodes from the previous level.
    std::vector<double> next(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      next[static_cast<std::size_t>(j)] =
          (j % 2 == 0 && !nodes.empty()) ? nodes[static_cast<std::size_t>(j / 2)]
                                         : ring(kTwoPi * j / n);
    nodes.swap(next);
    double sum = 0.0;
    for (double v : nodes) sum += v;
    const double integral = sum * kTwoPi / n;
    trace << " n=" << n << ":" << fmt(integral);
    if (n >= 32 && std::abs(integral - prev) <= f.tolerances().calabi_tol)
      return m.theta_B - integral;
    prev = integral;
  }
  throw NumericalFailure("calabi_invariant: angular quadrature did not converge;" + trace.str());
}

// ---- periodic orbits ----------------------------------------------------------------------------

OrbitAction orbit_action(const PeriodicOrbitRecord& orbit, const ActionFunction& f) {
  OrbitAction a;
  for (const Polar& x : orbit.points) a.action += f(x);
  a.mean_action = a.action / orbit.d;
  return a;
}

void assign_actions(std::vector<PeriodicOrbitRecord>& orbits, const ActionFunction& f) {
  for (auto& o : orbits) {
    const OrbitAction a = orbit_action(o, f);
    o.action = a.action;
    o.mean_action = a.mean_action;
  }
}

double orbit_residual(const SurfaceMapModel& model, const PeriodicOrbitRecord& orbit) {
  double worst = 0.0;
  const std::size_t n = orbit.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = to_xy(model.map(orbit.points[i]));
    const auto b = to_xy(orbit.points[(i + 1) % n]);
    worst = std::max(worst, std::hypot(a[0] - b[0], a[1] - b[1]));
  }
  return worst;
}

OrbitSearch find_orbits_radial(const SurfaceMapModel& model, int budget) {
  if (!model.twist) throw InvalidInput("find_orbits_radial: radial search needs a twist model");
  if (budget < 1) throw InvalidInput("find_orbits_radial: budget must be >= 1");
  const ScalarFn tau = model.twist->tau;
  const double lo = model.r_min(), hi = 1.0;
  const int n = 4096;
  std::vector<double> grid(n + 1), vals(n + 1);
  double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
  for (int i = 0; i <= n; ++i) {
    grid[i] = lo + (hi - lo) * i / n;
    vals[i] = tau(grid[i]);
    tmin = std::min(tmin, vals[i]);
    tmax = std::max(tmax, vals[i]);
  }
  OrbitSearch out;
  if (model.domain == Domain::Disk) {
    PeriodicOrbitRecord c;
    c.points = {{0.0, 0.0}};
    c.d = 1;
    c.origin = "centre";
    out.orbits.push_back(c);
  }
  for (int q = 1; q <= budget; ++q) {
    for (long p = static_cast<long>(std::ceil(tmin * q)); p <= static_cast<long>(std::floor(tmax * q)); ++p) {
      if (std::gcd(std::abs(p), static_cast<long>(q)) != 1) continue;
      const double target = static_cast<double>(p) / q;
      for (int i = 0; i < n; ++i) {
        const double g0 = vals[i] - target, g1 = vals[i + 1] - target;
        const bool change = (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0);
        if (!change) continue;
        const double r = g1 == 0.0 ? grid[i + 1]
                                   : bisect_root([&](double x) { return tau(x) - target; },
                                                 grid[i], grid[i + 1], 1e-15);
        if (r <= lo || r >= hi) continue;  // boundary circles are not interior orbits
        if (g1 == 0.0 && i + 2 <= n && vals[i + 2] - target == 0.0)
          out.log.push_back("tau = " + std::to_string(p) + "/" + std::to_string(q) +
                            " on an interval starting at r=" + fmt(r) +
                            "; only its first circle is reported");
        PeriodicOrbitRecord o;
        o.d = q;
        for (int k = 0; k < q; ++k)
          o.points.push_back({r, wrap_periodic(kTwoPi * static_cast<double>(k * p) / q, kTwoPi)});
        o.origin = "tau=" + std::to_string(p) + "/" + std::to_string(q);
        out.orbits.push_back(std::move(o));
      }
    }
  }
  return out;
}

OrbitSearch find_orbits_newton(const SurfaceMapModel& model, const std::vector<NewtonSeed>& seeds,
                               double tol, int max_iterations) {
  OrbitSearch out;
  auto iterate = [&](Eigen::Vector2d z, int d) {
    Polar p = to_polar(z(0), z(1));
    for (int i = 0; i < d; ++i) p = model.map(p);
    const auto xy = to_xy(p);
    return Eigen::Vector2d(xy[0], xy[1]);
  };
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const NewtonSeed& seed = seeds[s];
    if (seed.d < 1) {
      out.log.push_back("seed " + std::to_string(s) + ": d must be >= 1, skipped");
      continue;
    }
    const auto xy = to_xy(seed.point);
    Eigen::Vector2d z(xy[0], xy[1]);
    Eigen::Vector2d F = iterate(z, seed.d) - z;
    int it = 0;
    bool failed = false;
    for (; it < max_iterations && F.norm() > tol; ++it) {
      Eigen::Matrix2d J;
      const double h = 1e-7;
      for (int j = 0; j < 2; ++j) {
        Eigen::Vector2d zp = z, zm = z;
        zp(j) += h;
        zm(j) -= h;
        J.col(j) = ((iterate(zp, seed.d) - zp) - (iterate(zm, seed.d) - zm)) / (2 * h);
      }
      Eigen::JacobiSVD<Eigen::Matrix2d> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
      svd.setThreshold(1e-9);
      z -= svd.solve(F);
      if (!z.allFinite() || z.norm() >= 1.0 || z.norm() < model.r_min()) {
        failed = true;
        break;
      }
      F = iterate(z, seed.d) - z;
    }
    if (failed || !(F.norm() <= tol)) {
      out.log.push_back("seed " + std::to_string(s) + ": Newton diverged after " +
                        std::to_string(it) + " iterations (residual " + fmt(F.norm()) + "), skipped");
      continue;
    }
    PeriodicOrbitRecord o;
    o.d = seed.d;
    o.origin = "newton";
    Polar p = to_polar(z(0), z(1));
    for (int i = 0; i < seed.d; ++i) {
      o.points.push_back({p.r, wrap_periodic(p.theta, kTwoPi)});
      p = model.map(p);
    }
    out.orbits.push_back(std::move(o));
  }
  return out;
}

// ---- theorem-level checks -------------------------------------------------------------------

TheoremReport theorem_calabi_check(const ActionFunction& f, double calabi,
                                   const std::vector<PeriodicOrbitRecord>& orbits, double tol) {
  TheoremReport rep;
  rep.calabi = calabi;
  rep.tol = tol;
  rep.orbit_count = orbits.size();
  std::vector<double> radii{1.0};
  if (f.model().domain == Domain::Annulus) radii.push_back(f.model().r_in);
  rep.min_boundary_f = std::numeric_limits<double>::infinity();
  rep.max_boundary_f = -rep.min_boundary_f;
  for (double r : radii)
    for (int j = 0; j < 16; ++j) {
      const double v = f({r, kTwoPi * j / 16.0});
      rep.min_boundary_f = std::min(rep.min_boundary_f, v);
      rep.max_boundary_f = std::max(rep.max_boundary_f, v);
    }
  rep.hypothesis = calabi < rep.min_boundary_f - tol;
  rep.dual_hypothesis = calabi > rep.max_boundary_f + tol;
  rep.min_mean_action = std::numeric_limits<double>::infinity();
  rep.max_mean_action = -rep.min_mean_action;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const double m = orbits[i].mean_action;
    if (m < rep.min_mean_action) {
      rep.min_mean_action = m;
      rep.witness = i;
    }
    if (m > rep.max_mean_action) {
      rep.max_mean_action = m;
      rep.dual_witness = i;
    }
  }
  rep.conclusion_witnessed = rep.witness && rep.min_mean_action <= calabi + tol;
  rep.dual_conclusion_witnessed = rep.dual_witness && rep.max_mean_action >= calabi - tol;
  if (!rep.conclusion_witnessed) rep.witness.reset();
  if (!rep.dual_conclusion_witnessed) rep.dual_witness.reset();
  return rep;
}

PerturbationReport primitive_perturbation_check(const SurfaceMapModel& model,
                                                const PrimitiveData& beta, const Perturbation& mu,
                                                const std::vector<PeriodicOrbitRecord>& orbits) {
  const PrimitiveData beta2 = perturbed_primitive(model, beta, mu);
  const ActionFunction f1 = compute_f_beta(model, beta);
  const ActionFunction f2 = compute_f_beta(model, beta2);
  PerturbationReport rep;
  rep.calabi_before = calabi_invariant(f1);
  rep.calabi_after = calabi_invariant(f2);
  rep.calabi_deviation = std::abs(rep.calabi_after - rep.calabi_before);
  for (const auto& o : orbits)
    rep.max_action_deviation = std::max(
        rep.max_action_deviation, std::abs(orbit_action(o, f2).action - orbit_action(o, f1).action));
  return rep;
}

DualityReport duality_check(const SurfaceMapModel& model, std::size_t samples, std::uint64_t seed) {
  const SurfaceMapModel dual = inverse_model(model);
  const ActionFunction f = compute_f_beta(model, standard_primitive(model));
  const ActionFunction g = compute_f_beta(dual, standard_primitive(dual));
  DualityReport rep;
  std::mt19937_64 rng(seed);
  // f_dual = -f o phi^{-1}
  for (std::size_t i = 0; i < samples; ++i) {
    const Polar x = interior_sample(model, rng);
    rep.max_pointwise_sum = std::max(rep.max_pointwise_sum, std::abs(g(x) + f(model.inverse(x))));
  }
  rep.calabi_sum = calabi_invariant(f) + calabi_invariant(g);
  return rep;
}

DescentReport descent_check(const SurfaceMapModel& annulus, int budget) {
  const SurfaceMapModel disk = collapse_to_disk(annulus);
  const ActionFunction fa = compute_f_beta(annulus, standard_primitive(annulus));
  const ActionFunction fd = compute_f_beta(disk, standard_primitive(disk));
  DescentReport rep;
  rep.calabi_annulus = calabi_invariant(fa);
  rep.calabi_disk = calabi_invariant(fd);
  const double ri2 = annulus.r_in * annulus.r_in;
  for (const auto& o : find_orbits_radial(annulus, budget).orbits) {
    PeriodicOrbitRecord od = o;
    for (auto& p : od.points) p.r = std::sqrt((p.r * p.r - ri2) / (1.0 - ri2));
    rep.max_action_difference = std::max(
        rep.max_action_difference, std::abs(orbit_action(o, fa).action - orbit_action(od, fd).action));
  }
  return rep;
}

void write_orbits_csv(std::ostream& out, const std::vector<PeriodicOrbitRecord>& orbits) {
  csv::Writer w(out, {"d", "r", "theta", "action", "mean_action", "origin"});
  for (const auto& o : orbits)
    w.row({static_cast<std::int64_t>(o.d), o.points.front().r, o.points.front().theta, o.action,
           o.mean_action, o.origin});
}

void write_report_csv(std::ostream& out, const TheoremReport& r) {
  csv::Writer w(out, {"key", "value"});
  w.row({std::string("calabi"), r.calabi});
  w.row({std::string("min_boundary_f"), r.min_boundary_f});
  w.row({std::string("max_boundary_f"), r.max_boundary_f});
  w.row({std::string("tolerance"), r.tol});
  w.row({std::string("hypothesis"), static_cast<std::int64_t>(r.hypothesis)});
  w.row({std::string("conclusion_witnessed"), static_cast<std::int64_t>(r.conclusion_witnessed)});
  w.row({std::string("min_mean_action"), r.min_mean_action});
  w.row({std::string("dual_hypothesis"), static_cast<std::int64_t>(r.dual_hypothesis)});
  w.row({std::string("dual_conclusion_witnessed"),
         static_cast<std::int64_t>(r.dual_conclusion_witnessed)});
  w.row({std::string("max_mean_action"), r.max_mean_action});
  w.row({std::string("orbit_count"), static_cast<std::int64_t>(r.orbit_count)});
}

}  // namespace reeb::calabi
