#pragma once

#include "reeblab/core_model.hpp"
#include "reeblab/flow.hpp"

#include <string>
#include <utility>

/// Closed-form data for the ellipsoid boundary dE(a,b) = { pi|z1|^2/a + pi|z2|^2/b = 1 }
/// with the restricted standard Liouville form.
namespace reeb::ellipsoid {

struct Ellipsoid {
  double a = 1.0;
  double b = 1.0;
  /// a/b irrational; supplied by the caller since it cannot be decided numerically.
  bool irrational_ratio = false;
};

enum class SurfaceKind { LineClass, Disk };

/// Line-class surface meeting each torus in a (p,q) line, or the disk {z2 real, z2 >= 0}.
struct PQSurface {
  int p = 1;
  int q = 1;
  SurfaceKind kind = SurfaceKind::LineClass;
};

void validate(const Ellipsoid& e);
void validate(const PQSurface& s);

/// gamma_1 (z2 = 0, action a) and gamma_2 (z1 = 0, action b) with Seifert-framing rotation numbers.
std::pair<model::SimpleOrbitRecord, model::SimpleOrbitRecord> ellipsoid_orbits(const Ellipsoid& e);

/// Contact volume a b.
double ellipsoid_volume(const Ellipsoid& e);

/**
 * Area and orbit incidences of the surface. Line class (requires bq > ap): area bq - ap,
 * oriented boundary q gamma_2 - p gamma_1. Disk: area a, boundary gamma_1 with zero
 * conormal winding, gamma_2 crossing the interior once.
 */
model::SurfaceRecord pq_surface_data(const Ellipsoid& e, const PQSurface& s);

/// Crossings per unit time of an interior trajectory with the surface: |q/a - p/b| for the
/// line class, 1/b for the disk.
double torus_crossing_rate(const Ellipsoid& e, const PQSurface& s);

/// Orbit samples (intersections, action, boundary flag) for the inequality evaluator.
std::vector<model::OrbitSample> orbit_samples(const Ellipsoid& e, const PQSurface& s);

struct ReportRow {
  std::string orbit;
  double action = 0.0;
  double rot_tau = 0.0;
  std::optional<double> rot_sigma;  ///< empty for orbits crossing the interior
  double gamma_dot_sigma = 0.0;
  double ratio = 0.0;
  double threshold = 0.0;
};

std::vector<ReportRow> report_rows(const Ellipsoid& e, const PQSurface& s);
/// CSV with columns orbit, action, rot_tau, rot_sigma, gamma_dot_sigma, ratio, threshold.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

// ---- Reeb field charts --------------------------------------------------------------

/// Toric chart (theta1, theta2, w) with w = pi|z1|^2/a in (0,1); R = (2pi/a, 2pi/b, 0).
flow::ChartVectorField toric_chart_field(const Ellipsoid& e);

/// Chart (theta1, x2, y2) around gamma_1 (z2 = x2 + i y2), or (theta2, x1, y1) around gamma_2.
flow::ChartVectorField orbit_tube_field(const Ellipsoid& e, int which);

/// Exact flow in the toric chart (unwrapped angles).
flow::Point toric_flow_exact(const Ellipsoid& e, const flow::Point& x, double t);
/// Exact flow in the tube chart around gamma_1 or gamma_2.
flow::Point tube_flow_exact(const Ellipsoid& e, int which, const flow::Point& x, double t);

/**
 * Section for the surface in the toric chart: zero set of q theta1 - p theta2 (line class)
 * or theta2 (disk), written as sin of the defect and gated to the cos > 0 branch.
 */
flow::Section toric_surface_section(const PQSurface& s, double offset = 0.0);

}  // namespace reeb::ellipsoid
