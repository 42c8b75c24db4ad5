#pragma once

#include <cstddef>
#include <vector>

namespace tso {

/// Closed interval [lo, hi] on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  constexpr double width() const { return hi - lo; }
  constexpr bool contains(double x) const { return lo <= x && x <= hi; }
  constexpr double mid() const { return 0.5 * (lo + hi); }
  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

/// n equispaced points covering [lo, hi], endpoints included. The i-th point
/// is lo + width * i / (n - 1) so that decimal grids hit their nominal values.
inline std::vector<double> uniform_grid(Interval iv, std::size_t n) {
  std::vector<double> g;
  if (n == 0) return g;
  if (n == 1) return {iv.lo};
  g.reserve(n);
  const double den = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(iv.lo + iv.width() * static_cast<double>(i) / den);
  }
  g.back() = iv.hi;
  return g;
}

}  // namespace tso
