#pragma once

#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace reeb {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Absolute tolerance used for equality-vs-strict-inequality verdicts.
inline constexpr double kDefaultComparisonTol = 1e-12;

using ScalarFn = std::function<double(double)>;

/// Quintic smoothstep 6u^5 - 15u^4 + 10u^3 clamped to [0,1]; C^2 at both ends.
double smoothstep5(double u);
/// Derivative of smoothstep5 with respect to u (zero outside (0,1)).
double smoothstep5_derivative(double u);

/// Wraps x into [0, period).
double wrap_periodic(double x, double period);
/// Wraps x into [-period/2, period/2).
double wrap_symmetric(double x, double period);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/**
 * Adaptive Gauss-Kronrod quadrature of f over [a,b], split at the given interior
 * breakpoints (kinks of piecewise-defined integrands). Throws NumericalFailure if
 * the summed error estimate exceeds abs_tol after maximal refinement; the message
 * lists the per-panel estimates.
 */
QuadratureResult integrate(const ScalarFn& f, double a, double b, double abs_tol = 1e-12,
                           std::span<const double> breakpoints = {});

/// Convenience wrapper returning only the value.
double quad(const ScalarFn& f, double a, double b, double abs_tol = 1e-12,
            std::span<const double> breakpoints = {});

/**
 * Bisection for the root of a continuous f on [lo, hi] with f(lo), f(hi) of
 * opposite sign. Stops when the bracket is narrower than x_tol.
 */
double bisect_root(const ScalarFn& f, double lo, double hi, double x_tol = 1e-14,
                   int max_iter = 400);

/// Uniform double in [0,1) from the top 53 bits; unlike std::uniform_real_distribution the
/// sequence is the same on every standard library.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace reeb
