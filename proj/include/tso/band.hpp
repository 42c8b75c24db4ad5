#pragma once

// Distribution bands {G : G0 <= G <= G1} and the factories that build them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tso/dist.hpp"
#include "tso/error.hpp"
#include "tso/interval.hpp"

namespace tso {

/// A distribution band.
///
/// `g0` is the stochastically dominating bound (smallest CDF), `g1` the
/// dominated one. `alpha` is the last point where g0 vanishes and `beta_pt`
/// the first point where g1 reaches one. The two medians that drive the
/// divider's regime test are cached alongside.
struct Band {
  Cdf g0;
  Cdf g1;
  double alpha = 0.0;
  double beta_pt = 1.0;
  double mu_g1_minus = 0.5;
  double mu_g0_plus = 0.5;
  std::string label;

  const Interval& support() const { return g0.support(); }
};

inline constexpr std::size_t kDominanceGrid = 1001;
inline constexpr double kDominanceTol = 1e-12;

/// Throws OrderingError if g0 exceeds g1 somewhere on a 1001-point grid.
inline void check_dominance(const Cdf& g0, const Cdf& g1) {
  if (!(g0.support() == g1.support())) {
    throw OrderingError("band bounds must share a support");
  }
  for (double x : uniform_grid(g0.support(), kDominanceGrid)) {
    if (g0(x) > g1(x) + kDominanceTol) {
      throw OrderingError("band bounds violate dominance g0 <= g1 at x=" + std::to_string(x));
    }
  }
}

/// Band from two arbitrary bounds. Medians and clip points are located
/// numerically.
inline Band make_band(Cdf g0, Cdf g1, std::string label = "custom") {
  check_dominance(g0, g1);
  Band b{std::move(g0), std::move(g1), 0.0, 0.0, 0.0, 0.0, std::move(label)};
  b.alpha = zero_end(b.g0);
  b.beta_pt = one_start(b.g1);
  b.mu_g1_minus = median_bracket(b.g1).lower;
  b.mu_g0_plus = median_bracket(b.g0).upper;
  if (b.mu_g1_minus > b.mu_g0_plus) throw OrderingError("band medians out of order");
  return b;
}

/// The band generated by shifting `f` horizontally by +-eps.
///
/// g0(x) = F(x - eps) below x_h with the remaining mass as an atom at x_h;
/// g1(x) = F(x + eps), whose mass below x_l collapses into an atom at x_l.
/// eps = 0 returns the degenerate band {F}.
inline Band eps_shift_band(const Cdf& f, double eps) {
  if (!(eps >= 0.0)) throw InvalidParameter("eps_shift_band: requires eps >= 0");
  const Interval sup = f.support();
  const auto [xl, xh] = sup;
  const MedianBracket mf = median_bracket(f);
  const double f_zero = zero_end(f);
  const double f_one = one_start(f);

  Band b{f, f, xl, xh, mf.lower, mf.upper, "eps-shift(0)"};
  if (f_zero > xl) b.alpha = f_zero;
  if (f_one < xh) b.beta_pt = f_one;
  if (eps == 0.0) return b;

  char buf[48];
  std::snprintf(buf, sizeof buf, "eps-shift(%.12g)", eps);
  b.label = buf;

  auto shifted = [](const Cdf::Fn& fn, double s) {
    return Cdf::Fn([fn, s](double x) { return fn(x + s); });
  };
  auto f_eval = [f](double x) { return f(x); };
  auto f_dens = [f](double x) { return f.density(x); };
  Cdf::Fn f_slope;
  if (f.has_density_slope()) {
    f_slope = [f](double x) {
      if (x < f.support().lo || x > f.support().hi) return 0.0;
      return *f.density_slope(x);
    };
  }

  std::vector<double> k0{xl + eps}, k1{xh - eps};
  for (double k : f.kinks()) {
    k0.push_back(k + eps);
    k1.push_back(k - eps);
  }

  std::vector<Atom> a0;
  const double top = 1.0 - f.left_limit(xh - eps);
  if (top > 0.0) a0.push_back({xh, top});
  std::vector<Atom> a1;
  const double bottom = f(xl + eps);
  if (bottom > 0.0) a1.push_back({xl, bottom});

  b.g0 = Cdf(sup, shifted(f_eval, -eps), shifted(f_dens, -eps), std::move(k0), std::move(a0),
             f_slope ? shifted(f_slope, -eps) : Cdf::Fn{});
  b.g1 = Cdf(sup, shifted(f_eval, eps), shifted(f_dens, eps), std::move(k1), std::move(a1),
             f_slope ? shifted(f_slope, eps) : Cdf::Fn{});

  b.mu_g1_minus = std::max(xl, mf.lower - eps);
  b.mu_g0_plus = std::min(xh, mf.upper + eps);
  b.alpha = std::min(xh, f_zero + eps);
  b.beta_pt = std::max(xl, f_one - eps);
  return b;
}

/// Full uncertainty on [a, b]: g1 is a point mass at a, g0 a point mass at b.
inline Band interval_band(double a, double b, Interval support = {0.0, 1.0}) {
  if (a > b) throw OrderingError("interval_band: requires a <= b");
  if (!support.contains(a) || !support.contains(b)) {
    throw InvalidParameter("interval_band: requires x_l <= a <= b <= x_h");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "interval(%.12g,%.12g)", a, b);
  return Band{make_dirac(b, support), make_dirac(a, support), b, a, a, b, buf};
}

enum class BandMode { iid, correlated };

/// Maps the divider's valuation to the band faced at that valuation. In iid
/// mode the builder ignores its argument.
struct BandFactory {
  BandMode mode = BandMode::iid;
  std::function<Band(double)> builder;
  Interval support;

  Band operator()(double x_d) const { return builder(x_d); }
};

inline BandFactory iid_factory(Band band) {
  Interval sup = band.support();
  return {BandMode::iid, [b = std::move(band)](double) { return b; }, sup};
}

/// Bands around Tri^{x_D} on [0, 1]: the chooser's valuation is believed to
/// peak at the divider's own.
inline BandFactory correlated_triangular_factory(double eps) {
  if (!(eps >= 0.0)) throw InvalidParameter("correlated_triangular_factory: requires eps >= 0");
  return {BandMode::correlated,
          [eps](double x_d) {
            return eps_shift_band(make_cdf(Triangular{0.0, 1.0, std::clamp(x_d, 0.0, 1.0)}), eps);
          },
          {0.0, 1.0}};
}

}  // namespace tso
