#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace crw {

/// Uniform grid of `intervals + 1` points on [-1/2, 1/2], endpoints exact.
inline std::vector<double> uniform_grid(std::size_t intervals) {
  if (intervals == 0) throw std::invalid_argument("uniform_grid: need at least one interval");
  std::vector<double> x(intervals + 1);
  const double n = static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) x[i] = -0.5 + static_cast<double>(i) / n;
  x.front() = -0.5;
  x.back() = 0.5;
  return x;
}

/// Trapezoid weights on a sorted, possibly non-uniform grid.
inline std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double half = 0.5 * (x[i + 1] - x[i]);
    w[i] += half;
    w[i + 1] += half;
  }
  return w;
}

template <class F>
double trapezoid(std::span<const double> x, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    sum += 0.5 * (x[i + 1] - x[i]) * (f(i) + f(i + 1));
  }
  return sum;
}

}  // namespace crw
