#include "reeblab/core_model.hpp"

#include "reeblab/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace reeb::model {

void validate(const BoundaryIncidence& b) {
  if (b.q == 0) throw InvalidInput("boundary incidence '" + b.orbit.label + "': degree q = 0");
  if (b.m <= 0) throw InvalidInput("boundary incidence '" + b.orbit.label + "': m must be positive");
  if (std::gcd(std::abs(b.p_tau), std::abs(b.q)) != 1)
    throw InvalidInput("boundary incidence '" + b.orbit.label + "': gcd(|p_tau|,|q|) != 1");
  if (!(b.orbit.action > 0.0))
    throw InvalidInput("boundary incidence '" + b.orbit.label + "': action must be positive");
}

void validate(const SurfaceRecord& s, double tol) {
  if (!(s.area > 0.0)) throw InvalidInput("surface area must be positive");
  for (const auto& b : s.boundary) {
    validate(b);
    const double rs = rot_sigma(b);
    if (std::abs(rs) <= tol)
      throw InvalidInput("boundary orbit '" + b.orbit.label + "': rot_Sigma vanishes");
    if ((rs > 0.0) != (b.q > 0))
      throw InvalidInput("boundary orbit '" + b.orbit.label + "': sign(rot_Sigma) != sign(q)");
  }
}

double rot_sigma(const BoundaryIncidence& b) {
  if (b.q == 0) throw InvalidInput("rot_sigma: degree q = 0");
  if (std::gcd(std::abs(b.p_tau), std::abs(b.q)) != 1)
    throw InvalidInput("rot_sigma: gcd(|p_tau|,|q|) != 1");
  return b.orbit.rot_tau - static_cast<double>(b.p_tau) / static_cast<double>(std::abs(b.q));
}

double gamma_dot_sigma_boundary(const BoundaryIncidence& b) {
  if (b.m <= 0) throw InvalidInput("gamma_dot_sigma_boundary: m must be positive");
  const double value = static_cast<double>(b.m) * static_cast<double>(b.q) * rot_sigma(b);
  if (!(value > 0.0)) {
    std::ostringstream msg;
    msg << "gamma_dot_sigma_boundary: m q rot_Sigma = " << value
        << " is not positive; signs of q and rot_Sigma are inconsistent for '" << b.orbit.label
        << "'";
    throw InvalidInput(msg.str());
  }
  return value;
}

double frequency_ratio(double intersections, double action) {
  if (!(action > 0.0)) throw InvalidInput("frequency_ratio: action must be positive");
  return intersections / action;
}

Comparison compare(double x, double threshold, double tol) {
  if (std::abs(x - threshold) <= tol) return Comparison::EqualWithinTol;
  return x < threshold ? Comparison::Below : Comparison::Above;
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Below: return "below";
    case Comparison::EqualWithinTol: return "equal within tol";
    case Comparison::Above: return "above";
  }
  return "?";
}

InequalityReport evaluate_main_inequality(const std::vector<OrbitSample>& orbits, double area,
                                          double volume, double tol) {
  if (!(volume > 0.0)) throw InvalidInput("evaluate_main_inequality: volume must be positive");
  if (!(area > 0.0)) throw InvalidInput("evaluate_main_inequality: area must be positive");

  InequalityReport report;
  report.threshold = area / volume;
  report.tol = tol;
  report.empty = orbits.empty();

  bool boundary_ok = true;
  for (const auto& o : orbits) {
    InequalityRow row;
    row.orbit = o;
    row.ratio = frequency_ratio(o.intersections, o.action);
    row.versus_threshold = compare(row.ratio, report.threshold, tol);
    if (o.on_boundary) {
      const bool strict = row.versus_threshold == Comparison::Below;
      boundary_ok = boundary_ok && strict;
      row.verdict = strict ? "boundary hypothesis holds"
                           : (row.versus_threshold == Comparison::EqualWithinTol
                                  ? "boundary hypothesis fails (equality within tol)"
                                  : "boundary hypothesis fails");
    } else if (o.intersections > 0.0) {
      const bool reaches = row.versus_threshold != Comparison::Below;
      report.interior_bound_witnessed = report.interior_bound_witnessed || reaches;
      row.verdict = reaches ? (row.versus_threshold == Comparison::EqualWithinTol
                                   ? "witnesses bound (equality within tol)"
                                   : "witnesses bound")
                            : "below threshold";
    } else {
      row.verdict = "disjoint from surface";
    }
    report.sup_ratio = std::max(report.sup_ratio, row.ratio);
    report.rows.push_back(std::move(row));
  }
  report.boundary_hypothesis_holds = boundary_ok;
  report.frequency_bound_holds =
      !report.empty && compare(report.sup_ratio, report.threshold, tol) != Comparison::Below;
  return report;
}

std::string InequalityReport::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "label,action,intersections,ratio,threshold,verdict\n";
  for (const auto& r : rows) {
    out << r.orbit.label << ',' << r.orbit.action << ',' << r.orbit.intersections << ','
        << r.ratio << ',' << threshold << ',' << r.verdict << '\n';
  }
  out << "# sup_ratio=" << (empty ? std::string("-inf") : [&] {
    std::ostringstream s;
    s.precision(17);
    s << sup_ratio;
    return s.str();
  }()) << '\n';
  out << "# threshold=" << threshold << '\n';
  out << "# sup_vs_threshold="
      << (empty ? "empty" : to_string(compare(sup_ratio, threshold, tol))) << '\n';
  out << "# frequency_bound_holds=" << (frequency_bound_holds ? "true" : "false") << '\n';
  out << "# boundary_hypothesis_holds=" << (boundary_hypothesis_holds ? "true" : "false") << '\n';
  out << "# interior_bound_witnessed=" << (interior_bound_witnessed ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace reeb::model
