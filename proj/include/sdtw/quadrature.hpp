#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sdtw/errors.hpp"

namespace sdtw::quad {

/// Composite Simpson rule on a uniform grid with an even number of intervals.
inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  require(n >= 3 && (n - 1) % 2 == 0, "simpson: need an even number of intervals");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i + 1 < n; i += 2) even += f[i];
  return h / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

/// Running integral F[k] = int_0^{x_k} f on a uniform grid.
///
/// Even nodes use composite Simpson. An odd node adds the single-interval
/// three-point rule h/12 (5 f0 + 8 f1 - f2) to the preceding even node, so
/// every entry carries the same fourth-order accuracy.
inline std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  for (std::size_t k = 2; k < n; k += 2) {
    out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  }
  for (std::size_t k = 1; k < n; k += 2) {
    if (k + 1 < n) {
      out[k] = out[k - 1] + h / 12.0 * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
    } else {
      // last node with an odd count: mirror the rule onto (k-2, k-1, k)
      out[k] = out[k - 1] + h / 12.0 * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]);
    }
  }
  return out;
}

/// Trapezoid rule on arbitrary (strictly increasing) abscissae.
inline double trapezoid(std::span<const double> x, std::span<const double> f) {
  require(x.size() == f.size(), "trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return sum;
}

/// Three-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss3(F&& f, double a, double b) {
  static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) sum += weights[i] * f(mid + half * nodes[i]);
  return half * sum;
}

}  // namespace sdtw::quad
