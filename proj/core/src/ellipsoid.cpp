#include "reeblab/ellipsoid.hpp"

#include "reeblab/csv.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/numerics.hpp"

#include <cmath>
#include <numeric>

namespace reeb::ellipsoid {

void validate(const Ellipsoid& e) {
  if (!(e.a > 0.0) || !(e.b > 0.0)) throw InvalidInput("ellipsoid: a and b must be positive");
}

void validate(const PQSurface& s) {
  if (s.kind == SurfaceKind::Disk) return;
  if (s.p <= 0 || s.q <= 0) throw InvalidInput("(p,q) surface: p and q must be positive");
  if (std::gcd(s.p, s.q) != 1) throw InvalidInput("(p,q) surface: gcd(p,q) != 1");
}

std::pair<model::SimpleOrbitRecord, model::SimpleOrbitRecord> ellipsoid_orbits(const Ellipsoid& e) {
  validate(e);
  if (!e.irrational_ratio)
    throw InvalidInput("ellipsoid_orbits: a/b must be declared irrational (two simple orbits)");
  model::SimpleOrbitRecord g1{"gamma_1", e.a, e.a / e.b, true};
  model::SimpleOrbitRecord g2{"gamma_2", e.b, e.b / e.a, true};
  return {g1, g2};
}

double ellipsoid_volume(const Ellipsoid& e) {
  validate(e);
  return e.a * e.b;
}

model::SurfaceRecord pq_surface_data(const Ellipsoid& e, const PQSurface& s) {
  validate(s);
  const auto [g1, g2] = ellipsoid_orbits(e);
  model::SurfaceRecord rec;
  if (s.kind == SurfaceKind::Disk) {
    rec.area = e.a;
    rec.boundary.push_back({g1, 1, 1, 0});
    rec.interior.push_back({g2, 1.0});
  } else {
    if (!(e.b * s.q > e.a * s.p))
      throw InvalidInput("pq_surface_data: orientation requires bq > ap");
    rec.area = e.b * s.q - e.a * s.p;
    // Oriented boundary q gamma_2 - p gamma_1: gamma_1 is covered p times against the Reeb
    // direction and the conormal turns q times; the roles swap on gamma_2.
    rec.boundary.push_back({g1, 1, -s.p, s.q});
    rec.boundary.push_back({g2, 1, s.q, s.p});
  }
  model::validate(rec);
  return rec;
}

double torus_crossing_rate(const Ellipsoid& e, const PQSurface& s) {
  validate(e);
  validate(s);
  if (s.kind == SurfaceKind::Disk) return 1.0 / e.b;
  return std::abs(s.q / e.a - s.p / e.b);
}

std::vector<model::OrbitSample> orbit_samples(const Ellipsoid& e, const PQSurface& s) {
  const model::SurfaceRecord rec = pq_surface_data(e, s);
  std::vector<model::OrbitSample> out;
  for (const auto& b : rec.boundary)
    out.push_back({b.orbit.label, model::gamma_dot_sigma_boundary(b), b.orbit.action, true});
  for (const auto& i : rec.interior)
    out.push_back({i.orbit.label, i.intersections, i.orbit.action, false});
  return out;
}

std::vector<ReportRow> report_rows(const Ellipsoid& e, const PQSurface& s) {
  const model::SurfaceRecord rec = pq_surface_data(e, s);
  const double threshold = rec.area / ellipsoid_volume(e);
  std::vector<ReportRow> rows;
  for (const auto& b : rec.boundary) {
    ReportRow r;
    r.orbit = b.orbit.label;
    r.action = b.orbit.action;
    r.rot_tau = b.orbit.rot_tau;
    r.rot_sigma = model::rot_sigma(b);
    r.gamma_dot_sigma = model::gamma_dot_sigma_boundary(b);
    r.ratio = model::frequency_ratio(r.gamma_dot_sigma, r.action);
    r.threshold = threshold;
    rows.push_back(r);
  }
  for (const auto& i : rec.interior) {
    ReportRow r;
    r.orbit = i.orbit.label;
    r.action = i.orbit.action;
    r.rot_tau = i.orbit.rot_tau;
    r.gamma_dot_sigma = i.intersections;
    r.ratio = model::frequency_ratio(i.intersections, r.action);
    r.threshold = threshold;
    rows.push_back(r);
  }
  return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  csv::Writer w(out, {"orbit", "action", "rot_tau", "rot_sigma", "gamma_dot_sigma", "ratio",
                      "threshold"});
  for (const auto& r : rows) {
    w.row({r.orbit, r.action, r.rot_tau,
           r.rot_sigma ? csv::Cell{*r.rot_sigma} : csv::Cell{std::string("")}, r.gamma_dot_sigma,
           r.ratio, r.threshold});
  }
}

flow::ChartVectorField toric_chart_field(const Ellipsoid& e) {
  validate(e);
  flow::ChartVectorField f;
  f.name = "ellipsoid-toric";
  f.periods = {kTwoPi, kTwoPi, 0.0};
  const double w1 = kTwoPi / e.a;
  const double w2 = kTwoPi / e.b;
  f.velocity = [w1, w2](const flow::Point&) { return flow::Point{w1, w2, 0.0}; };
  f.inside = [](const flow::Point& x) { return x[2] > 0.0 && x[2] < 1.0; };
  return f;
}

flow::ChartVectorField orbit_tube_field(const Ellipsoid& e, int which) {
  validate(e);
  if (which != 1 && which != 2) throw InvalidInput("orbit_tube_field: which must be 1 or 2");
  const double along = which == 1 ? e.a : e.b;   // period of the core orbit
  const double across = which == 1 ? e.b : e.a;  // rotation period of the normal disk
  flow::ChartVectorField f;
  f.name = which == 1 ? "ellipsoid-tube-gamma1" : "ellipsoid-tube-gamma2";
  f.periods = {kTwoPi, 0.0, 0.0};
  const double wa = kTwoPi / along;
  const double wn = kTwoPi / across;
  f.velocity = [wa, wn](const flow::Point& x) { return flow::Point{wa, -wn * x[2], wn * x[1]}; };
  f.inside = [across](const flow::Point& x) {
    return kPi * (x[1] * x[1] + x[2] * x[2]) / across < 1.0;
  };
  return f;
}

flow::Point toric_flow_exact(const Ellipsoid& e, const flow::Point& x, double t) {
  return {x[0] + kTwoPi * t / e.a, x[1] + kTwoPi * t / e.b, x[2]};
}

flow::Point tube_flow_exact(const Ellipsoid& e, int which, const flow::Point& x, double t) {
  const double along = which == 1 ? e.a : e.b;
  const double across = which == 1 ? e.b : e.a;
  const double phi = kTwoPi * t / across;
  const double c = std::cos(phi), s = std::sin(phi);
  return {x[0] + kTwoPi * t / along, c * x[1] - s * x[2], s * x[1] + c * x[2]};
}

flow::Section toric_surface_section(const PQSurface& s, double offset) {
  validate(s);
  double cq = 0.0, cp = 1.0;  // disk: defect = theta2
  if (s.kind == SurfaceKind::LineClass) {
    cq = static_cast<double>(s.q);
    cp = static_cast<double>(s.p);
  }
  auto defect = [cq, cp, offset](const flow::Point& x) { return cq * x[0] - cp * x[1] - offset; };
  flow::Section sec;
  if (s.kind == SurfaceKind::Disk) {
    sec.value = [offset](const flow::Point& x) { return std::sin(x[1] - offset); };
    sec.gate = [offset](const flow::Point& x) { return std::cos(x[1] - offset); };
  } else {
    sec.value = [defect](const flow::Point& x) { return std::sin(defect(x)); };
    sec.gate = [defect](const flow::Point& x) { return std::cos(defect(x)); };
  }
  return sec;
}

}  // namespace reeb::ellipsoid
