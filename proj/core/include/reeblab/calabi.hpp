#pragma once

#include "reeblab/numerics.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

/**
 * Area-preserving maps of the unit disk or of an annulus r_in <= r <= 1, their action
 * function f_beta, Calabi invariant and periodic-orbit mean actions.
 *
 * Conventions. Points are polar (r, theta). The area form is omega = c r dr dtheta with
 * c = 1 / (pi (1 - r_in^2)), so that omega has total mass 1. The outer circle is the
 * distinguished boundary B. The standard primitive is beta = c (r^2 - r_in^2)/2 dtheta,
 * which integrates to 1 over B and to 0 over the inner circle.
 */
namespace reeb::calabi {

enum class Domain { Disk, Annulus };

struct Polar {
  double r = 0.0;
  double theta = 0.0;
};

/// Partial derivatives of (r', theta') = phi(r, theta).
struct PolarJacobian {
  double rr = 1.0;  ///< dr'/dr
  double rt = 0.0;  ///< dr'/dtheta
  double tr = 0.0;  ///< dtheta'/dr
  double tt = 1.0;  ///< dtheta'/dtheta
};

/// Rotation profile tau(r) of a twist map (r, theta) -> (r, theta + 2 pi tau(r)).
struct TwistProfile {
  std::string name;
  ScalarFn tau;
  ScalarFn tau_prime;
  std::vector<double> knots;
};

/// tau = 2 sign (r^2 - 1).
TwistProfile ideal_twist(double sign = 1.0);
/// tau = 2 (sigma(r) - 1), sigma = r^2 up to 0.8, quintic blend to the constant 0.81 on
/// [0.8, 0.9], constant beyond. Rigid near the boundary.
TwistProfile smoothed_twist();
/// tau = angle everywhere (rigid rotation).
TwistProfile constant_twist(double angle);
/// Monotone cubic Hermite interpolant through user knots (r_i, tau_i), at least four of
/// them, with zero end slopes and constant outside the knot range.
TwistProfile spline_twist(const std::vector<double>& r, const std::vector<double>& tau);

struct SurfaceMapModel {
  std::string name;
  Domain domain = Domain::Disk;
  double r_in = 0.0;
  std::function<Polar(const Polar&)> map;
  std::function<Polar(const Polar&)> inverse;
  /// Empty means finite differences of map.
  std::function<PolarJacobian(const Polar&)> jacobian;
  double theta_B = 0.0;      ///< real lift of the rotation angle (in turns) on B
  double theta_inner = 0.0;  ///< rotation angle on the inner circle (annulus only)
  std::optional<TwistProfile> twist;
  /// Exactness assumption on first cohomology, asserted by the caller; automatic for
  /// disks and radially symmetric annulus maps.
  bool exactness_asserted = true;

  double density() const { return 1.0 / (kPi * (1.0 - r_in * r_in)); }
  double r_min() const { return domain == Domain::Disk ? 0.0 : r_in; }
};

/// Twist map of the given profile; theta_B defaults to tau(1), theta_inner to tau(r_in).
SurfaceMapModel twist_map(TwistProfile profile, Domain domain = Domain::Disk, double r_in = 0.0,
                          std::optional<double> theta_B = std::nullopt);
/// (phi^{-1}, -theta_B).
SurfaceMapModel inverse_model(const SurfaceMapModel& model);
/// Same map with theta_B replaced by theta_B + n.
SurfaceMapModel shift_lift(const SurfaceMapModel& model, int n);
/// Annulus model collapsed to a disk along the inner circle, rho^2 = (r^2 - r_in^2)/(1 - r_in^2).
SurfaceMapModel collapse_to_disk(const SurfaceMapModel& annulus);

PolarJacobian jacobian(const SurfaceMapModel& model, const Polar& x);

struct ModelCheck {
  double max_area_defect = 0.0;   ///< max |det(J) r'/r - 1|
  double max_inverse_defect = 0.0;
  double max_rigidity_defect = 0.0;  ///< deviation from a rigid rotation on the boundary collars
  bool area_preserving = false;      ///< max_area_defect <= 1e-10
  bool boundary_rigid = false;       ///< rigid rotation on collars of width 0.05
};
ModelCheck check_model(const SurfaceMapModel& model, std::size_t samples = 2000,
                       std::uint64_t seed = 1);

// ---- primitives ------------------------------------------------------------------------

/// Scalar function mu with polar partial derivatives.
struct Perturbation {
  std::string name;
  std::function<double(const Polar&)> value;
  std::function<double(const Polar&)> d_r;
  std::function<double(const Polar&)> d_theta;
};

Perturbation zero_perturbation();
/// amplitude r^2 (1 - r^2)^2 cos(theta).
Perturbation cosine_perturbation(double amplitude = 0.3);
/// Compactly supported bump A exp(-1/(1 - t^2)), t = |x - c| / w, with random centre, width
/// and amplitude, supported in r < 0.9 (and away from r_in).
Perturbation random_bump(std::uint64_t seed, double r_in = 0.0);

struct PrimitiveData {
  std::string name;
  /// Coefficients (b_r, b_theta) of beta = b_r dr + b_theta dtheta.
  std::function<std::array<double, 2>(const Polar&)> coeff;
  bool boundary_B = false;      ///< beta = rho^2 dtheta/(2 pi) on B in collar coordinates
  bool boundary_other = false;  ///< beta = (rho^2 - 1) dtheta/(2 pi) on the inner circle
};

PrimitiveData standard_primitive(const SurfaceMapModel& model);
/// beta + d mu. Throws InvalidInput unless mu and d mu vanish on the boundary circles.
PrimitiveData perturbed_primitive(const SurfaceMapModel& model, const PrimitiveData& beta,
                                  const Perturbation& mu);

struct PrimitiveCheck {
  double max_d_beta_defect = 0.0;   ///< |d beta - omega| by finite differences
  /// |d(phi* beta - beta)| by fourth-order differences, relative to the partials compared
  double max_closed_defect = 0.0;
  bool ok = false;  ///< both below 1e-8 (1e-5 without an analytic Jacobian)
};
PrimitiveCheck check_primitive(const SurfaceMapModel& model, const PrimitiveData& beta,
                               std::size_t samples = 500, std::uint64_t seed = 2);

/// Components (dr, dtheta) of phi* beta - beta at x.
std::array<double, 2> pullback_difference(const SurfaceMapModel& model, const PrimitiveData& beta,
                                          const Polar& x);

struct FluxReport {
  std::vector<double> periods;  ///< one per generator of H^1 (empty for the disk)
  double max_closed_defect = 0.0;
  bool zero = false;
};
/// Throws NumericalFailure if phi* omega differs from omega, probed as the closedness of
/// phi* beta' - beta' for the standard primitive beta'.
FluxReport compute_flux(const SurfaceMapModel& model, const PrimitiveData& beta);

// ---- action function and Calabi invariant ---------------------------------------------

struct Tolerances {
  double path_tol = 1e-12;       ///< per path integral
  double path_agreement = 1e-9;  ///< two homotopic paths must agree this well
  double calabi_tol = 1e-10;
};

/**
 * f_beta with f_beta = theta_B on B and d f_beta = phi* beta - beta. Evaluated along the
 * path that runs along B to the target angle and then radially inward.
 */
class ActionFunction {
 public:
  ActionFunction(SurfaceMapModel model, PrimitiveData beta, Tolerances tol = {});

  double operator()(const Polar& x) const;
  /// Value along the second path (radial at angle 0, then along the circle through x).
  double along_circle_path(const Polar& x) const;

  const SurfaceMapModel& model() const { return model_; }
  const PrimitiveData& beta() const { return beta_; }
  const Tolerances& tolerances() const { return tol_; }

 private:
  SurfaceMapModel model_;
  PrimitiveData beta_;
  Tolerances tol_;
};

struct FBetaReport {
  double max_path_difference = 0.0;
  double boundary_B_variation = 0.0;
  double boundary_inner_variation = 0.0;
  double boundary_B_value = 0.0;
  std::optional<double> boundary_inner_value;
};

/**
 * Builds f_beta and checks path independence and boundary constancy at sampled points.
 * Throws InvalidInput when flux is nonzero and NumericalFailure when the two paths differ
 * by more than path_agreement.
 */
ActionFunction compute_f_beta(const SurfaceMapModel& model, const PrimitiveData& beta,
                              FBetaReport* report = nullptr, Tolerances tol = {},
                              std::size_t samples = 24, std::uint64_t seed = 3);

/// Integral of f_beta against omega. Uses the Fubini form
/// theta_B - int dtheta int (phi*beta - beta)(d/dr)(s, theta) m(s) ds with m(s) the omega-mass
/// inside radius s, so no nested path integrals are needed.
double calabi_invariant(const ActionFunction& f);

// ---- periodic orbits ---------------------------------------------------------------------

struct PeriodicOrbitRecord {
  std::vector<Polar> points;
  int d = 1;
  double action = 0.0;
  double mean_action = 0.0;
  std::string origin;  ///< e.g. "tau=-1/2", "centre", "newton"
};

struct OrbitAction {
  double action = 0.0;
  double mean_action = 0.0;
};

OrbitAction orbit_action(const PeriodicOrbitRecord& orbit, const ActionFunction& f);
/// Fills action and mean_action in place.
void assign_actions(std::vector<PeriodicOrbitRecord>& orbits, const ActionFunction& f);

/// max_i |phi(x_i) - x_{i+1}| in Cartesian coordinates.
double orbit_residual(const SurfaceMapModel& model, const PeriodicOrbitRecord& orbit);

struct OrbitSearch {
  std::vector<PeriodicOrbitRecord> orbits;
  std::vector<std::string> log;
};

/// Solves tau(r) = p/q for reduced fractions with 1 <= q <= budget in the open radial
/// interval; one orbit per invariant circle. Disk models also get the centre.
OrbitSearch find_orbits_radial(const SurfaceMapModel& model, int budget);

struct NewtonSeed {
  Polar point;
  int d = 1;
};
/// Newton refinement of phi^d(x) = x; diverging seeds are skipped and logged.
OrbitSearch find_orbits_newton(const SurfaceMapModel& model, const std::vector<NewtonSeed>& seeds,
                               double tol = 1e-12, int max_iterations = 50);

// ---- theorem-level checks ------------------------------------------------------------------

struct TheoremReport {
  double calabi = 0.0;
  double min_boundary_f = 0.0;
  double max_boundary_f = 0.0;
  double tol = kDefaultComparisonTol;
  bool hypothesis = false;  ///< Cal < min over the boundary of f_beta
  bool conclusion_witnessed = false;  ///< some orbit has mean action <= Cal
  std::optional<std::size_t> witness;
  double min_mean_action = 0.0;
  bool dual_hypothesis = false;  ///< Cal > max over the boundary of f_beta
  bool dual_conclusion_witnessed = false;  ///< some orbit has mean action >= Cal
  std::optional<std::size_t> dual_witness;
  double max_mean_action = 0.0;
  std::size_t orbit_count = 0;
};

TheoremReport theorem_calabi_check(const ActionFunction& f, double calabi,
                                   const std::vector<PeriodicOrbitRecord>& orbits,
                                   double tol = kDefaultComparisonTol);

struct PerturbationReport {
  double calabi_before = 0.0;
  double calabi_after = 0.0;
  double calabi_deviation = 0.0;
  double max_action_deviation = 0.0;
};

/// Recomputes Cal and every orbit action with beta + d mu.
PerturbationReport primitive_perturbation_check(const SurfaceMapModel& model,
                                                const PrimitiveData& beta, const Perturbation& mu,
                                                const std::vector<PeriodicOrbitRecord>& orbits);

struct DualityReport {
  double max_pointwise_sum = 0.0;  ///< max |f(x) + f_dual(x)| at sampled points
  double calabi_sum = 0.0;         ///< Cal + Cal_dual
};
DualityReport duality_check(const SurfaceMapModel& model, std::size_t samples = 32,
                            std::uint64_t seed = 4);

struct DescentReport {
  double calabi_annulus = 0.0;
  double calabi_disk = 0.0;
  double max_action_difference = 0.0;
};
/// Compares Cal and orbit actions of an annulus twist model with its collapsed disk model.
DescentReport descent_check(const SurfaceMapModel& annulus, int budget);

/// CSV d, r, theta, action, mean_action, origin.
void write_orbits_csv(std::ostream& out, const std::vector<PeriodicOrbitRecord>& orbits);
/// CSV key, value of the theorem report.
void write_report_csv(std::ostream& out, const TheoremReport& report);

}  // namespace reeb::calabi
