#pragma once

// Quasiconcavity toolkit: grid verification, golden-section maximization and
// the peak of the minimum of two strictly quasiconcave functions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "tso/error.hpp"
#include "tso/interval.hpp"

namespace tso {

inline constexpr double kQcTol = 1e-9;

struct QcReport {
  bool ok = true;
  /// Grid indices (i, j, k) with f(x_j) <= min(f(x_i), f(x_k)) - tol.
  std::optional<std::array<std::size_t, 3>> witness;
  std::array<double, 3> witness_x{};
};

/// Samples f on n equispaced points and looks for a dip between two higher
/// samples. Prefix and suffix maxima make this linear in n.
template <class F>
QcReport qc_grid_check(F&& f, Interval domain, std::size_t n) {
  if (n < 3) throw InvalidParameter("qc_grid_check: requires n >= 3");
  const auto xs = uniform_grid(domain, n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(xs[i]);

  std::vector<std::size_t> pre(n), suf(n);
  pre[0] = 0;
  for (std::size_t i = 1; i < n; ++i) pre[i] = v[i] > v[pre[i - 1]] ? i : pre[i - 1];
  suf[n - 1] = n - 1;
  for (std::size_t i = n - 1; i-- > 0;) suf[i] = v[i] > v[suf[i + 1]] ? i : suf[i + 1];

  QcReport rep;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const std::size_t i = pre[j - 1], k = suf[j + 1];
    if (v[j] <= std::min(v[i], v[k]) - kQcTol) {
      rep.ok = false;
      rep.witness = {i, j, k};
      rep.witness_x = {xs[i], xs[j], xs[k]};
      break;
    }
  }
  return rep;
}

struct PeakResult {
  double location = 0.0;
  double value = 0.0;
  /// False when the function drops discontinuously right after the peak, so
  /// the supremum is only approached from the left.
  bool attained = true;
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kJumpTol = 1e-6;

/// Golden-section search for the maximum of a strictly quasiconcave f.
template <class F>
PeakResult unimodal_max(F&& f, Interval domain, double tol) {
  double a = domain.lo, b = domain.hi;
  if (!(b - a > tol)) {
    const double x = 0.5 * (a + b);
    return {x, f(x), true, a, b};
  }
  constexpr double r = 0.6180339887498949;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
    if (!(c < d)) break;
  }
  const double fa = f(a), fb = f(b);
  if (std::abs(fa - fb) > kJumpTol) {
    // narrow to adjacent doubles around the jump; f is taken to be
    // right-continuous, so a drop means the supremum is a left limit
    double l = a, r = b, fl = fa;
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (l + r);
      if (!(l < m && m < r)) break;
      const double fm = f(m);
      if (std::abs(fl - fm) > kJumpTol) {
        r = m;
      } else {
        l = m;
        fl = fm;
      }
    }
    const double fr = f(r);
    if (fr >= fl) return {r, fr, true, l, r};
    return {l, fl, false, l, r};
  }
  const double m = 0.5 * (a + b);
  PeakResult res{m, f(m), true, a, b};
  if (fa > res.value) res = {a, fa, true, a, b};
  if (fb > res.value) res = {b, fb, true, a, b};
  return res;
}

/// Refines a golden-section peak by bisecting on the sign of the analytic
/// slope. Golden section locates a smooth peak only to about sqrt(machine
/// epsilon); bisection on the derivative reaches adjacent doubles. Left
/// unchanged unless the slope changes sign from + to - around the peak.
template <class F, class S>
PeakResult polish_peak(F&& f, S&& slope, Interval domain, PeakResult peak) {
  const double w = 1e-6 + (peak.hi - peak.lo);
  double l = std::max(domain.lo, peak.location - w);
  double r = std::min(domain.hi, peak.location + w);
  if (!(slope(l) > 0.0 && slope(r) < 0.0)) return peak;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (l + r);
    if (!(l < m && m < r)) break;
    if (slope(m) > 0.0) {
      l = m;
    } else {
      r = m;
    }
  }
  const double x = 0.5 * (l + r);
  const double v = f(x);
  if (v < peak.value - 1e-12) return peak;
  return {x, v, true, l, r};
}

/// Which branch the minimum follows when the two functions never cross.
enum class ActiveBranch { f, g };

/// Peak of min(f, g) where g is the minimum left of the crossing x0 and f
/// right of it:
///   x0 < m_f          -> m_f
///   m_f <= x0 <= m_g  -> x0
///   m_g < x0          -> m_g
/// Without a crossing the active branch's own peak is returned.
inline double min_peak(double m_f, double m_g, std::optional<double> crossing,
                       ActiveBranch active = ActiveBranch::f) {
  if (!crossing) return active == ActiveBranch::f ? m_f : m_g;
  const double x0 = *crossing;
  const bool left = x0 < m_f;
  const bool right = m_g < x0;
  if (left && right) throw OrderingError("min_peak: m_g < x0 < m_f admits two peaks");
  if (left) return m_f;
  if (right) return m_g;
  return x0;
}

}  // namespace tso
