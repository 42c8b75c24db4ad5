#pragma once

// Adaptive Simpson quadrature for integrands that are smooth between known
// break points.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tso/error.hpp"

namespace tso {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

template <class F>
void simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                  int depth, QuadResult& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || !(a < lm && rm < b)) {
    acc.value += left + right + delta / 15.0;
    acc.error += std::abs(delta) / 15.0;
    return;
  }
  simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

inline constexpr int kSimpsonMaxDepth = 48;

/// Integral of f over [a, b], splitting at every break point inside (a, b).
/// The tolerance is shared among pieces in proportion to their length.
/// Throws QuadratureError when the accumulated error estimate exceeds tol.
template <class F>
QuadResult integrate(F&& f, double a, double b, std::vector<double> splits, double tol) {
  QuadResult acc;
  if (!(b > a)) return acc;
  std::erase_if(splits, [&](double s) { return !(a < s && s < b); });
  splits.push_back(a);
  splits.push_back(b);
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  const double len = b - a;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    const double lo = splits[i], hi = splits[i + 1];
    const double piece_tol = tol * (hi - lo) / len;
    const double flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    detail::simpson_step(f, lo, hi, flo, fmid, fhi, whole, piece_tol, kSimpsonMaxDepth, acc);
  }
  if (acc.error > tol) {
    throw QuadratureError("adaptive Simpson did not reach tolerance " + std::to_string(tol) +
                          " (estimate " + std::to_string(acc.error) + ")");
  }
  return acc;
}

}  // namespace tso
