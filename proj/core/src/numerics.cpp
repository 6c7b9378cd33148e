#include "reeblab/numerics.hpp"

#include "reeblab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace reeb {

double smoothstep5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

double smoothstep5_derivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double w = u * (1.0 - u);
  return 30.0 * w * w;
}

double wrap_periodic(double x, double period) {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  if (y >= period) y -= period;
  return y;
}

double wrap_symmetric(double x, double period) {
  return wrap_periodic(x + 0.5 * period, period) - 0.5 * period;
}

namespace {

constexpr int kMaxSubdivisions = 4000;

struct Panel {
  double a, b, value, error, l1;
};

// One Gauss-Kronrod 31 rule on [a, b]. The rule is applied on [-1, 1] and rescaled here,
// because the Boost 1.74 driver does not rescale its error estimate on subintervals.
Panel gk_panel(const ScalarFn& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double err = 0.0, l1 = 0.0;
  const double v = GK::integrate([&](double t) { return f(mid + half * t); }, -1.0, 1.0, 0,
                                 0.0, &err, &l1);
  return {a, b, half * v, half * err, half * l1};
}

struct LargerError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

// Global adaptive bisection: always split the panel with the largest error estimate.
std::vector<Panel> adaptive_panels(const ScalarFn& f, double a, double b, double abs_tol) {
  std::priority_queue<Panel, std::vector<Panel>, LargerError> heap;
  heap.push(gk_panel(f, a, b));
  double total_error = heap.top().error;
  double l1 = heap.top().l1;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  for (int i = 0; i < kMaxSubdivisions; ++i) {
    if (total_error <= std::max(abs_tol, floor * l1)) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const Panel left = gk_panel(f, worst.a, mid), right = gk_panel(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  std::vector<Panel> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  // Sum left to right so results do not depend on heap order.
  std::sort(out.begin(), out.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  return out;
}

}  // namespace

QuadratureResult integrate(const ScalarFn& f, double a, double b, double abs_tol,
                           std::span<const double> breakpoints) {
  if (!(abs_tol > 0.0)) throw InvalidInput("integrate: abs_tol must be positive");
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::vector<double> cuts{lo};
  for (double x : breakpoints)
    if (x > lo && x < hi) cuts.push_back(x);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const std::size_t n = cuts.size() - 1;
  const double per_panel = abs_tol / static_cast<double>(n);

  QuadratureResult out;
  std::vector<Panel> panels;
  for (std::size_t i = 0; i < n; ++i) {
    Panel sub{cuts[i], cuts[i + 1], 0.0, 0.0, 0.0};
    for (const Panel& p : adaptive_panels(f, cuts[i], cuts[i + 1], per_panel)) {
      sub.value += p.value;
      sub.error += p.error;
      sub.l1 += p.l1;
    }
    panels.push_back(sub);
    out.value += sub.value;
    out.error += sub.error;
  }
  out.panels = static_cast<int>(n);

  double l1 = 0.0;
  for (const auto& p : panels) l1 += p.l1;
  const double roundoff_floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (!std::isfinite(out.value) || out.error > std::max(abs_tol, roundoff_floor)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "quadrature did not converge on [" << lo << ", " << hi << "]: error estimate "
        << out.error << " > tolerance " << abs_tol << "; panels:";
    for (const auto& p : panels)
      msg << " [" << p.a << "," << p.b << "] err=" << p.error;
    throw NumericalFailure(msg.str());
  }
  out.value *= sign;
  return out;
}

double quad(const ScalarFn& f, double a, double b, double abs_tol,
            std::span<const double> breakpoints) {
  return integrate(f, a, b, abs_tol, breakpoints).value;
}

double bisect_root(const ScalarFn& f, double lo, double hi, double x_tol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw InvalidInput("bisect_root: endpoints do not bracket a sign change");
  for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace reeb
