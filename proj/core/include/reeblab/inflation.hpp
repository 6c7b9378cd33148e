#pragma once

#include "reeblab/flow.hpp"
#include "reeblab/numerics.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

/**
 * Boundary-tube normal form, the very-nice isotopy of the surface near its boundary,
 * and the inflation family lambda_delta = exp(dbar zeta(s) beta(r)) lambda on the slab
 * swept out by the surface under the Reeb flow for time s0.
 *
 * Charts:
 *   tube         (t, r, theta):  lambda = dt + (r^2/2) d(theta - 2 pi rho t / T)
 *   over Sigma_0 (s, x, y):      lambda_delta = e^{dbar zeta(s)} (ds + lambda_Sigma)
 *   over N(B)    (s, tt, r):     lambda_delta = e^{dbar zeta(s) beta(r)} (ds + (1 - pi rho_S r^2/T) dtt)
 * where tt is the coordinate on the q-fold cover of the boundary orbit and
 * rho_S = rho - p/q is the rotation number relative to the surface.
 */
namespace reeb::inflation {

using flow::Point;

/// Scalar function on [lo, hi] with derivative and the knots where it is only C^2.
struct ScalarProfile {
  std::string name;
  ScalarFn value;
  ScalarFn derivative;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> knots;

  double operator()(double x) const { return value(x); }
};

/// Plateau bump on [0, s0]: quintic ascent on [s0/8, 3s0/8], 1 on the middle quarter,
/// mirrored descent. Integrates to s0/2.
ScalarProfile plateau_bump(double s0);

/// Quintic cutoff on [0, r0): 0 on [0, r0/3], ramp on [r0/3, 5r0/6], 1 beyond.
/// Maximal slope 3.75/r0.
ScalarProfile smooth_cutoff(double r0);

/// Throws InvalidInput on the first violated bump condition (sampled at n points).
void validate_bump(const ScalarProfile& zeta, double s0, int n = 2001);
/// Throws InvalidInput on the first violated cutoff condition, including beta' <= 4/r0.
void validate_cutoff(const ScalarProfile& beta, double r0, int n = 2001);

/// integral_0^s0 exp(dbar zeta) ds - s0, i.e. the delta produced by dbar.
double delta_from_delta_bar(const ScalarProfile& zeta, double s0, double delta_bar);

/**
 * The unique dbar >= 0 with integral_0^s0 exp(dbar zeta(s)) ds = s0 + delta. Bracketing
 * bisection to 1e-12 followed by one Newton polish; the final residual satisfies
 * |integral - (s0 + delta)| <= 1e-12 s0.
 */
double solve_delta_bar(const ScalarProfile& zeta, double s0, double delta);

// ---- tube normal form ----------------------------------------------------------------

struct TubeChart {
  double T = 1.0;      ///< period of the boundary orbit
  double rho = 0.0;    ///< rot_tau of the orbit in the tube trivialization
  double r0 = 0.5;
  int p = 0;           ///< conormal winding of the very-nice surface
  int q = 1;           ///< covering degree
  double theta_B = 0.0;

  double rho_surface() const { return rho - static_cast<double>(p) / static_cast<double>(q); }
};

void validate(const TubeChart& tube);

/// R = d/dt + (2 pi rho / T) d/dtheta in (t, r, theta).
flow::ChartVectorField model_tube_field(const TubeChart& tube);
/// Coefficients (lambda_t, lambda_r, lambda_theta) of the nice contact form.
Point nice_form(const TubeChart& tube, const Point& x);
/// Section sin(q(theta - 2 pi theta_B) - 2 pi p t / T), gated to the cos > 0 branch; its zero
/// set is the q sheets of the very-nice surface.
flow::Section tube_surface_section(const TubeChart& tube);

// ---- inflation family ------------------------------------------------------------------

struct InflationProfile {
  double s0 = 1.0;
  double delta = 0.0;
  double delta_bar = 0.0;
  double r0 = 0.5;
  ScalarProfile zeta;
  ScalarProfile beta;
};

/// Default plateau bump and cutoff, dbar solved from delta.
InflationProfile make_profile(double s0, double delta, double r0);
InflationProfile make_profile(ScalarProfile zeta, ScalarProfile beta, double s0, double delta,
                              double r0);

/// Primitive lambda_Sigma on Sigma_0 together with its Liouville field X (i_X d lambda_Sigma = lambda_Sigma).
struct LiouvilleModel {
  std::string name;
  std::function<std::array<double, 2>(double, double)> primitive;  ///< (dx, dy) coefficients
  std::function<std::array<double, 2>(double, double)> field;
  double radius = 1.0;  ///< Sigma_0 is the disk of this radius
};

/// lambda_Sigma = (x dy - y dx)/2 with X = (x/2) d/dx + (y/2) d/dy.
LiouvilleModel radial_liouville(double radius = 1.0);

enum class SlabChart { OverSigma0, OverBoundaryTube };

struct ChartModel {
  SlabChart kind = SlabChart::OverSigma0;
  std::function<Point(const Point&)> form;  ///< coefficients of lambda_delta in chart coordinates
  flow::ChartVectorField reeb;
};

/**
 * Contact form coefficients and Reeb field of lambda_delta in the requested chart. The
 * boundary-tube chart requires a tube with rho_surface() != 0 and rejects profiles for
 * which the ds-coefficient of the Reeb field is not positive on the check grid.
 */
ChartModel lambda_delta_chart(SlabChart kind, const InflationProfile& profile,
                              const TubeChart* tube = nullptr,
                              const LiouvilleModel& liouville = radial_liouville());

struct GridResolution {
  int s = 256;
  int r = 256;
  int t = 64;
};

struct PositivityReport {
  bool positive = true;
  double min_coefficient = 0.0;  ///< minimum of e^g R_s = 1 - dbar zeta beta' h T / (2 pi rho_S r)
  double at_s = 0.0;
  double at_r = 0.0;
};

/// Samples the ds coefficient of the Reeb field on an (s, r) grid. The coefficient does not
/// depend on tt, so grid.t only matters for reporting.
PositivityReport check_ds_positivity(const InflationProfile& profile, const TubeChart& tube,
                                     const GridResolution& grid = {});

/// Largest delta for which the ds coefficient stays positive over the boundary tube.
double max_admissible_delta(double s0, double r0, const TubeChart& tube);

struct ContactAudit {
  std::size_t samples = 0;
  double max_normalization_error = 0.0;  ///< max |lambda(R) - 1|
  double max_kernel_error = 0.0;         ///< max component of i_R d lambda
  bool passed = false;
};

/// Draws a point of the chart's sampling domain from two-or-three uniforms in [0,1).
using ChartSampler = std::function<Point(const std::array<double, 3>&)>;
ChartSampler default_sampler(SlabChart kind, const InflationProfile& profile,
                             const TubeChart* tube, const LiouvilleModel& liouville);

/**
 * Checks lambda(R) = 1 and i_R d lambda = 0 at random points, with d lambda formed by
 * central finite differences of the coefficient functions.
 */
ContactAudit audit_contact_condition(const ChartModel& chart, const ChartSampler& sampler,
                                     std::size_t samples, std::uint64_t seed,
                                     double normalization_tol = 1e-8, double kernel_tol = 1e-6,
                                     double fd_step = 1e-5);

struct Traversal {
  double time = 0.0;
  Point exit{};
};

/// Reeb flow time from (0, z) to the top of the slab over Sigma_0; throws if the trajectory
/// leaves Sigma_0.
Traversal slab_traversal(const InflationProfile& profile, double x, double y,
                         const LiouvilleModel& liouville = radial_liouville());
double slab_traversal_time(const InflationProfile& profile, double x, double y,
                           const LiouvilleModel& liouville = radial_liouville());

/// Flow from (0, z) forward (or from (s0, z) backward) to the middle level s0/2.
Traversal half_traversal(const InflationProfile& profile, double x, double y, bool backward,
                         const LiouvilleModel& liouville = radial_liouville());

/// Traversal of the slab over the boundary tube, starting at (0, tt, r).
Traversal tube_slab_traversal(const InflationProfile& profile, const TubeChart& tube, double tt,
                              double r);

struct SlabRegion {
  double A0 = 1.0;  ///< area of Sigma_0
  InflationProfile profile;
};

struct SlabVolume {
  double volume = 0.0;            ///< (A0/2) integral (exp(2 dbar zeta) - 1) ds
  double lower_bound = 0.0;       ///< delta A0
  bool exceeds_lower_bound = false;
  double step_closed_form = 0.0;  ///< A0 (delta + delta^2/s0): plateau replaced by a step of mass s0/2
  double smoothing_budget = 0.0;  ///< A0 (e^dbar - 1) delta / 2 bounds |volume - step_closed_form|
};

SlabVolume slab_volume(const SlabRegion& slab);

/// Monte-Carlo estimate of the same volume: A0 times the e^{2 sigma}-weighted measure of
/// {(s, sigma) : 0 < sigma < dbar zeta(s)}.
double slab_volume_monte_carlo(const SlabRegion& slab, std::size_t samples, std::uint64_t seed);

struct BudgetReport {
  double lhs = 0.0;  ///< exp(2 delta (F + eps))
  double rhs = 0.0;  ///< 1 + 2 A0 delta / V
  bool admissible = false;
  bool any_admissible = false;  ///< false iff F + eps >= A0 / V
  double largest_delta = 0.0;   ///< sup of admissible delta (0 if none)
};

BudgetReport inflation_budget(double F, double epsilon, double delta, double A0, double V);

// ---- very-nice isotopy ---------------------------------------------------------------

/// Boundary annulus function (tt, r) -> angle in turns, given as a real lift with
/// eta(tt + qT, r) = eta(tt, r) + p.
using AnnulusFn = std::function<double(double, double)>;

struct VeryNiceResult {
  int p = 0;
  double winding = 0.0;   ///< unrounded winding integral
  double residual = 0.0;  ///< |winding - p|
  AnnulusFn eta_prime;    ///< linear model for beta = 0, eta for beta = 1
};

/**
 * Total rotation of the conormal direction (integral over [0, qT] of d eta(tt, 0)/dtt),
 * rounded to the integer p, and the interpolated surface
 * eta'(tt, r) = (1 - beta(r)) (theta_B + p tt/(qT)) + beta(r) eta(tt, r).
 * Throws InvalidInput if the residual is >= 0.01 or gcd(|p|,|q|) != 1.
 */
VeryNiceResult make_very_nice(const AnnulusFn& eta, int q, double T, double r0, double theta_B);

struct TransversalityReport {
  double max_slope = 0.0;  ///< extreme of d eta'/dtt in the direction that matters
  double bound = 0.0;      ///< rot_tau / T
  bool passed = false;
};

/// Samples d eta'/dtt < rot_tau/T (or > for a boundary oriented against the Reeb flow).
TransversalityReport check_transversality(const AnnulusFn& eta_prime, double rot_tau, int q,
                                          double T, double r0, bool reeb_oriented = true,
                                          int n_t = 256, int n_r = 64);

}  // namespace reeb::inflation
