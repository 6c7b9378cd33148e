#pragma once

#include "reeblab/numerics.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

/**
 * Shared vocabulary for Reeb orbits on a contact three-manifold and admissible
 * symplectic surfaces bounded by them, plus the frequency-ratio evaluators.
 *
 * Signed degree convention: BoundaryIncidence::q is the signed degree of the boundary
 * map onto its orbit, measured against the Reeb orientation. A boundary component that
 * covers its orbit against the Reeb direction (the gamma_1 boundary of the (p,q)
 * ellipsoid surface, which appears as -p gamma_1 in the oriented boundary) carries a
 * negative q. With this convention gamma . Sigma = m q rot_Sigma is positive for every
 * admissible surface, and all the closed-form ellipsoid values are reproduced.
 */
namespace reeb::model {

struct SimpleOrbitRecord {
  std::string label;
  double action = 0.0;   ///< period T = integral of the contact form
  double rot_tau = 0.0;  ///< rotation number in the declared trivialization
  bool elliptic = true;
};

struct BoundaryIncidence {
  SimpleOrbitRecord orbit;
  int m = 1;      ///< number of boundary components mapping to the orbit
  int q = 1;      ///< common signed covering degree (nonzero)
  int p_tau = 0;  ///< conormal winding w.r.t. the trivialization
};

/// An orbit that is not on the boundary, together with its algebraic intersection count.
struct InteriorIncidence {
  SimpleOrbitRecord orbit;
  double intersections = 0.0;
};

struct SurfaceRecord {
  double area = 0.0;
  std::vector<BoundaryIncidence> boundary;
  std::vector<InteriorIncidence> interior;
  bool interior_transversal = true;
};

/// Throws InvalidInput unless q != 0, m > 0, gcd(|p_tau|,|q|) = 1 and action > 0.
void validate(const BoundaryIncidence& b);
/// Throws InvalidInput unless area > 0 and every boundary incidence is valid with sign(rot_Sigma) = sign(q).
void validate(const SurfaceRecord& s, double tol = kDefaultComparisonTol);

/// rot_tau - p_tau/|q|, the rotation number relative to the surface framing.
double rot_sigma(const BoundaryIncidence& b);

/// m q rot_Sigma; throws InvalidInput if the result is not strictly positive.
double gamma_dot_sigma_boundary(const BoundaryIncidence& b);

/// gamma . Sigma / A(gamma).
double frequency_ratio(double intersections, double action);

struct OrbitSample {
  std::string label;
  double intersections = 0.0;
  double action = 0.0;
  bool on_boundary = false;  ///< orbit lies in the image of the surface boundary
};

enum class Comparison { Below, EqualWithinTol, Above };

struct InequalityRow {
  OrbitSample orbit;
  double ratio = 0.0;
  Comparison versus_threshold = Comparison::Below;
  std::string verdict;
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  double threshold = 0.0;  ///< Area / vol
  double sup_ratio = -std::numeric_limits<double>::infinity();
  bool empty = true;
  double tol = kDefaultComparisonTol;
  /// sup of ratios >= threshold (within tol).
  bool frequency_bound_holds = false;
  /// every boundary orbit has ratio strictly below the threshold.
  bool boundary_hypothesis_holds = false;
  /// some orbit meeting the interior reaches the threshold (within tol).
  bool interior_bound_witnessed = false;

  /// Structured text: one line per orbit (label, action, intersections, ratio, threshold, verdict)
  /// followed by summary lines.
  std::string to_text() const;
};

/**
 * Evaluates the frequency bound sup gamma.Sigma / A(gamma) >= Area/vol on a finite
 * list of orbits, the boundary hypothesis (every boundary orbit strictly below the
 * threshold) and whether an interior-crossing orbit witnesses the bound.
 * Equality within tol is reported explicitly, never folded into strict inequality.
 */
InequalityReport evaluate_main_inequality(const std::vector<OrbitSample>& orbits, double area,
                                          double volume, double tol = kDefaultComparisonTol);

Comparison compare(double x, double threshold, double tol);
const char* to_string(Comparison c);

}  // namespace reeb::model
