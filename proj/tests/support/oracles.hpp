#pragma once

// Independent reference computations for the unit tests. They are deliberately naive
// (fixed-step rules, exhaustive enumeration) so that they share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// The count smallest values of {sum m_i a_i}, by brute-force enumeration of all
/// multiplicity vectors with entries below count.
inline std::vector<double> spectrum(const std::vector<double>& gens, std::size_t count) {
  std::vector<double> values{0.0};
  for (double a : gens) {
    std::vector<double> next;
    for (double base : values)
      for (std::size_t m = 0; m < count; ++m) next.push_back(base + static_cast<double>(m) * a);
    std::sort(next.begin(), next.end());
    next.resize(std::min(next.size(), count));
    values.swap(next);
  }
  return values;
}

/// max over all splits k_1 + ... + k_m = k of sum_i spectra[i][k_i], by recursion over splits.
inline double union_brute_force(const std::vector<std::vector<double>>& spectra, std::size_t k,
                                std::size_t from = 0) {
  if (from + 1 == spectra.size()) return spectra[from][k];
  double best = -1e300;
  for (std::size_t l = 0; l <= k; ++l)
    best = std::max(best, spectra[from][l] + union_brute_force(spectra, k - l, from + 1));
  return best;
}

/// Classical fixed-step RK4 for an autonomous 3D system.
using Vec3 = std::array<double, 3>;
inline Vec3 rk4(const std::function<Vec3(const Vec3&)>& f, Vec3 x, double t, int steps) {
  const double h = t / steps;
  auto axpy = [](const Vec3& a, double s, const Vec3& b) {
    return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  for (int i = 0; i < steps; ++i) {
    const Vec3 k1 = f(x), k2 = f(axpy(x, h / 2, k1)), k3 = f(axpy(x, h / 2, k2)),
               k4 = f(axpy(x, h, k3));
    for (int j = 0; j < 3; ++j) x[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return x;
}

}  // namespace oracle
