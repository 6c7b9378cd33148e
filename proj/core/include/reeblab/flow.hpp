#pragma once

#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

/**
 * Chart-based integration of three-dimensional vector fields with section-crossing
 * detection and periodic-orbit refinement.
 *
 * Coordinates flagged periodic in a chart are wrapped to [0, period) after every
 * accepted step. Section functions must therefore be branch-safe: write them in terms
 * of sine/cosine of angular defects, and use the gate to reject the antipodal zero.
 */
namespace reeb::flow {

using Point = std::array<double, 3>;

struct ChartVectorField {
  std::string name;
  /// Wrap period per coordinate; 0 means the coordinate is not periodic.
  std::array<double, 3> periods{0.0, 0.0, 0.0};
  std::function<Point(const Point&)> velocity;
  /// Chart domain test; an empty function means the whole coordinate space.
  std::function<bool(const Point&)> inside;

  Point operator()(const Point& x) const { return velocity(x); }
  bool contains(const Point& x) const { return !inside || inside(x); }
  /// Wraps periodic coordinates.
  Point wrap(Point x) const;
  /// x - y with periodic components reduced to [-period/2, period/2).
  Point difference(const Point& x, const Point& y) const;
};

/// Scalar section g(x) = 0; a crossing is accepted only where gate(x) > 0 (if a gate is set).
struct Section {
  std::function<double(const Point&)> value;
  std::function<double(const Point&)> gate;
};

struct SectionEvent {
  double time = 0.0;
  Point point{};
  int sign = 0;  ///< sign of dg/dt at the crossing
};

struct TrajectorySummary {
  double total_time = 0.0;
  long crossing_count = 0;  ///< sum of event signs
  std::vector<SectionEvent> events;
  double empirical_rate = 0.0;  ///< crossing_count / total_time
  Point end_point{};
  bool exited_chart = false;
  long accepted_steps = 0;
};

struct IntegratorOptions {
  double rel_tol = 1e-10;  ///< per-step relative error target of the 5(4) pair
  double abs_tol = 1e-12;
  double event_tol = 1e-10;  ///< bisection width for event times
  double max_step = 0.05;    ///< caps steps so that no two crossings share a step
  double initial_step = 1e-3;
  double min_step = 1e-13;   ///< smaller accepted steps count as step-size underflow
  bool stop_at_first_event = false;
};

/// Receives every accepted step (time, state, section value or NaN).
using StepObserver = std::function<void(double, const Point&, double)>;

/**
 * Integrates the field from start for the given duration with an adaptive
 * Dormand-Prince 5(4) pair, localizing every accepted sign change of the section by
 * bisection on the dense-output interpolant. Leaving the chart ends the run at the last
 * interior step with exited_chart set. Step-size underflow throws NumericalFailure.
 */
TrajectorySummary integrate(const ChartVectorField& field, const Point& start, double duration,
                            const Section* section = nullptr, const IntegratorOptions& opts = {},
                            const StepObserver& observer = {});

/// Fixed-step classical Dormand-Prince 5th-order propagation (used for order checks).
Point integrate_fixed_step(const ChartVectorField& field, const Point& start, double duration,
                           int steps);

/// Time-P flow map with tight tolerances and no section.
Point flow_map(const ChartVectorField& field, const Point& x, double time,
               const IntegratorOptions& opts = {});

struct PeriodicOrbitOptions {
  double newton_tol = 1e-11;  ///< max-norm residual of the closing condition
  int max_iterations = 40;
  double fd_step = 1e-6;
  double degeneracy_ratio = 1e-9;  ///< min/max singular value below this flags degeneracy
  IntegratorOptions integrator{1e-12, 1e-13, 1e-12, 0.05, 1e-3, 1e-14, false};
};

struct PeriodicOrbit {
  Point point{};
  double period = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool degenerate = false;  ///< Jacobian of the closing condition was (near-)singular
};

/**
 * Newton iteration on (x, P) for Phi_P(x) = x with a finite-difference Jacobian and the
 * phase condition <F(seed), x - seed> = 0. Near-singular systems are solved in the
 * minimum-norm least-squares sense and reported via PeriodicOrbit::degenerate.
 * Throws NumericalFailure if the residual does not reach newton_tol.
 */
PeriodicOrbit refine_periodic_orbit(const ChartVectorField& field, const Point& seed,
                                    double approx_period, const PeriodicOrbitOptions& opts = {});

/// crossing_count / action, for a trajectory that closes up after time `action`.
double empirical_frequency(const TrajectorySummary& summary, double action);
/// crossing_count / total_time for a long non-closed sample (long-time average).
double empirical_frequency(const TrajectorySummary& summary);

/// CSV writers: trajectory rows (time, x0, x1, x2, section) and events (time, sign).
class TrajectoryCsv {
 public:
  explicit TrajectoryCsv(std::ostream& out);
  StepObserver observer();

 private:
  std::ostream* out_;
};
void write_events_csv(std::ostream& out, const TrajectorySummary& summary);

}  // namespace reeb::flow
