#include "reeblab/flow.hpp"

#include "reeblab/csv.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace reeb::flow {

namespace odeint = boost::numeric::odeint;

Point ChartVectorField::wrap(Point x) const {
  for (std::size_t i = 0; i < 3; ++i)
    if (periods[i] > 0.0) x[i] = wrap_periodic(x[i], periods[i]);
  return x;
}

Point ChartVectorField::difference(const Point& x, const Point& y) const {
  Point d{};
  for (std::size_t i = 0; i < 3; ++i) {
    d[i] = x[i] - y[i];
    if (periods[i] > 0.0) d[i] = wrap_symmetric(d[i], periods[i]);
  }
  return d;
}

namespace {

bool finite(const Point& x) {
  return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

bool crosses(double g0, double g1) { return (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0); }

template <class Dense>
SectionEvent locate_event(const Dense& dense, const Section& section, double t0, double t1,
                          double g0, double g1, double tol) {
  Point x{};
  double lo = t0, hi = t1;
  double glo = g0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    dense.calc_state(mid, x);
    const double gm = section.value(x);
    if (crosses(glo, gm)) {
      hi = mid;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  SectionEvent ev;
  ev.time = 0.5 * (lo + hi);
  dense.calc_state(ev.time, ev.point);
  ev.sign = g1 > g0 ? 1 : -1;
  return ev;
}

void merge_close_events(std::vector<SectionEvent>& events, double tol) {
  std::vector<SectionEvent> merged;
  for (const auto& e : events) {
    if (!merged.empty() && std::abs(e.time - merged.back().time) <= tol &&
        e.sign == merged.back().sign)
      continue;
    merged.push_back(e);
  }
  events.swap(merged);
}

}  // namespace

TrajectorySummary integrate(const ChartVectorField& field, const Point& start, double duration,
                            const Section* section, const IntegratorOptions& opts,
                            const StepObserver& observer) {
  if (!(duration > 0.0)) throw InvalidInput("flow::integrate: duration must be positive");
  if (!field.velocity) throw InvalidInput("flow::integrate: field has no velocity function");
  if (!field.contains(start))
    throw InvalidInput("flow::integrate: start point is outside the chart '" + field.name + "'");

  auto system = [&field](const Point& x, Point& dxdt, double /*t*/) { dxdt = field.velocity(x); };
  auto dense = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, opts.max_step,
                                         odeint::runge_kutta_dopri5<Point>());

  TrajectorySummary summary;
  Point x = field.wrap(start);
  double t = 0.0;
  dense.initialize(x, t, std::min(opts.initial_step, duration));

  auto section_value = [&](const Point& p) {
    return section ? section->value(p) : std::numeric_limits<double>::quiet_NaN();
  };
  double g_prev = section_value(x);
  if (observer) observer(t, x, g_prev);

  bool stopped = false;
  while (t < duration && !stopped) {
    std::pair<double, double> span;
    try {
      span = dense.do_step(system);
    } catch (const odeint::step_adjustment_error& e) {
      std::ostringstream msg;
      msg << "flow::integrate: step-size control failed at t=" << t << " in chart '"
          << field.name << "': " << e.what();
      throw NumericalFailure(msg.str());
    }
    const double t0 = span.first;
    double t1 = span.second;
    Point x1 = dense.current_state();
    if (t1 > duration) {
      t1 = duration;
      dense.calc_state(t1, x1);
    }
    if (!finite(x1)) {
      std::ostringstream msg;
      msg << "flow::integrate: non-finite state at t=" << t1 << " in chart '" << field.name << "'";
      throw NumericalFailure(msg.str());
    }
    if (t1 - t0 < opts.min_step && t1 < duration) {
      std::ostringstream msg;
      msg << "flow::integrate: step-size underflow (dt=" << (t1 - t0) << ") at t=" << t0
          << " in chart '" << field.name << "'";
      throw NumericalFailure(msg.str());
    }
    if (!field.contains(x1)) {
      summary.exited_chart = true;
      break;  // keep the last interior state (x, t)
    }
    ++summary.accepted_steps;

    double g1 = section_value(x1);
    if (section && crosses(g_prev, g1)) {
      SectionEvent ev = locate_event(dense, *section, t0, t1, g_prev, g1, opts.event_tol);
      if (!section->gate || section->gate(ev.point) > 0.0) {
        ev.point = field.wrap(ev.point);
        summary.events.push_back(ev);
        if (opts.stop_at_first_event) {
          t = ev.time;
          x = ev.point;
          stopped = true;
          break;
        }
      }
    }

    t = t1;
    x = field.wrap(x1);
    if (x != x1) dense.initialize(x, t, dense.current_time_step());
    g_prev = section_value(x);
    if (observer) observer(t, x, g_prev);
  }

  merge_close_events(summary.events, opts.event_tol);
  summary.total_time = t;
  summary.end_point = x;
  for (const auto& e : summary.events) summary.crossing_count += e.sign;
  summary.empirical_rate =
      t > 0.0 ? static_cast<double>(summary.crossing_count) / t : 0.0;
  return summary;
}

Point integrate_fixed_step(const ChartVectorField& field, const Point& start, double duration,
                           int steps) {
  if (steps <= 0) throw InvalidInput("integrate_fixed_step: steps must be positive");
  auto system = [&field](const Point& x, Point& dxdt, double) { dxdt = field.velocity(x); };
  Point x = start;
  odeint::integrate_n_steps(odeint::runge_kutta_dopri5<Point>(), system, x, 0.0,
                            duration / steps, static_cast<std::size_t>(steps));
  return x;
}

Point flow_map(const ChartVectorField& field, const Point& x, double time,
               const IntegratorOptions& opts) {
  IntegratorOptions o = opts;
  o.stop_at_first_event = false;
  const TrajectorySummary s = integrate(field, x, time, nullptr, o);
  if (s.exited_chart)
    throw NumericalFailure("flow_map: trajectory left chart '" + field.name + "' at t=" +
                           std::to_string(s.total_time));
  return s.end_point;
}

PeriodicOrbit refine_periodic_orbit(const ChartVectorField& field, const Point& seed,
                                    double approx_period, const PeriodicOrbitOptions& opts) {
  if (!(approx_period > 0.0)) throw InvalidInput("refine_periodic_orbit: period must be positive");
  const Point anchor = field.wrap(seed);
  const Point f0 = field.velocity(anchor);

  PeriodicOrbit orbit;
  orbit.point = anchor;
  orbit.period = approx_period;

  auto closing = [&](const Point& x, double period, Point& image) {
    image = flow_map(field, x, period, opts.integrator);
    const Point r = field.difference(image, x);
    const Point dx = field.difference(x, anchor);
    Eigen::Vector4d g;
    g << r[0], r[1], r[2], f0[0] * dx[0] + f0[1] * dx[1] + f0[2] * dx[2];
    return g;
  };

  Point image{};
  Eigen::Vector4d g = closing(orbit.point, orbit.period, image);
  orbit.residual = g.cwiseAbs().maxCoeff();

  for (int it = 0; it < opts.max_iterations && orbit.residual > opts.newton_tol; ++it) {
    Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
    for (int j = 0; j < 3; ++j) {
      Point xp = orbit.point;
      const double h = opts.fd_step * (1.0 + std::abs(xp[static_cast<std::size_t>(j)]));
      xp[static_cast<std::size_t>(j)] += h;
      Point image_p{};
      const Eigen::Vector4d gp = closing(xp, orbit.period, image_p);
      jac.col(j) = (gp - g) / h;
    }
    const Point fy = field.velocity(image);
    jac(0, 3) = fy[0];
    jac(1, 3) = fy[1];
    jac(2, 3) = fy[2];
    jac(3, 3) = 0.0;

    Eigen::JacobiSVD<Eigen::Matrix4d> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) throw NumericalFailure("refine_periodic_orbit: zero Jacobian");
    const bool degenerate = sv(3) < opts.degeneracy_ratio * sv(0);
    orbit.degenerate = orbit.degenerate || degenerate;
    svd.setThreshold(opts.degeneracy_ratio);
    const Eigen::Vector4d step = svd.solve(-g);

    Point next = orbit.point;
    for (std::size_t k = 0; k < 3; ++k) next[k] += step(static_cast<Eigen::Index>(k));
    orbit.point = field.wrap(next);
    orbit.period += step(3);
    if (!(orbit.period > 0.0))
      throw NumericalFailure("refine_periodic_orbit: Newton drove the period nonpositive");
    g = closing(orbit.point, orbit.period, image);
    orbit.residual = g.cwiseAbs().maxCoeff();
    orbit.iterations = it + 1;
  }
  if (!(orbit.residual <= opts.newton_tol)) {
    std::ostringstream msg;
    msg << "refine_periodic_orbit: Newton did not converge in " << orbit.iterations
        << " iterations (residual " << orbit.residual << ", period " << orbit.period << ")";
    throw NumericalFailure(msg.str());
  }
  return orbit;
}

double empirical_frequency(const TrajectorySummary& summary, double action) {
  if (!(action > 0.0)) throw InvalidInput("empirical_frequency: action must be positive");
  return static_cast<double>(summary.crossing_count) / action;
}

double empirical_frequency(const TrajectorySummary& summary) { return summary.empirical_rate; }

TrajectoryCsv::TrajectoryCsv(std::ostream& out) : out_(&out) {
  *out_ << "time,x0,x1,x2,section\n";
}

StepObserver TrajectoryCsv::observer() {
  return [out = out_](double t, const Point& x, double g) {
    *out << csv::format(t) << ',' << csv::format(x[0]) << ',' << csv::format(x[1]) << ','
         << csv::format(x[2]) << ',' << csv::format(g) << '\n';
  };
}

void write_events_csv(std::ostream& out, const TrajectorySummary& summary) {
  csv::Writer w(out, {"time", "sign"});
  for (const auto& e : summary.events) w.row({e.time, static_cast<std::int64_t>(e.sign)});
}

}  // namespace reeb::flow
