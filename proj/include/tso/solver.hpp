#pragma once

// Optimal price announcements of the divider.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "tso/band.hpp"
#include "tso/dist.hpp"
#include "tso/error.hpp"
#include "tso/interval.hpp"
#include "tso/payoff.hpp"
#include "tso/qc.hpp"

namespace tso {

enum class Regime { bayes_low, hedge, bayes_high, approx_sup };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::bayes_low:
      return "bayes-low";
    case Regime::hedge:
      return "hedge";
    case Regime::bayes_high:
      return "bayes-high";
    case Regime::approx_sup:
      return "approx-sup";
  }
  return "?";
}

struct Quote {
  double price = 0.0;
  Regime regime = Regime::hedge;
};

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultDelta = 1e-6;

/// Price announcement m(x) sampled on a valuation grid.
///
/// `quote` evaluates the same rule at arbitrary valuations; welfare integrals
/// need m off the grid. For iid bands kink_lo / kink_hi are the medians
/// mu_{G1}^- and mu_{G0}^+; for correlated factories they bound the set of
/// hedging valuations, and kink_lo > kink_hi encodes an empty hedge set.
struct PricePolicy {
  std::vector<double> grid;
  std::vector<double> prices;
  std::vector<Regime> regimes;
  double kink_lo = 0.0;
  double kink_hi = 0.0;
  Interval support;
  Utility utility;
  std::function<Quote(double)> quote;
  std::string label;

  double m(double x) const { return quote(x).price; }
  std::size_t size() const { return grid.size(); }
};

/// Bayes-optimal price against f: maximizes pi_F over 2p in [x_l, x_h].
///
/// An atom of f at x_h is excluded at the right end of the domain (the left
/// limit is used there) unless x_d = x_h.
inline double bayes_price(double x_d, const Cdf& f, const Utility& u, double tol = kDefaultTol) {
  const auto [xl, xh] = f.support();
  auto objective = [&](double p) {
    const double two_p = 2.0 * p;
    const double F = (two_p >= xh && x_d < xh) ? f.left_limit(xh) : f(two_p);
    return u(x_d - p) * F + u(p) * (1.0 - F);
  };
  auto slope = [&](double p) { return bayes_payoff_slope(p, x_d, f, u); };
  const Interval dom{0.5 * xl, 0.5 * xh};
  PeakResult peak = unimodal_max(objective, dom, tol);
  peak = polish_peak(objective, slope, dom, peak);
  return peak.location;
}

/// Maxmin-optimal price against a band, classified by the median test:
/// below mu_{G1}^- the Bayes price against G1, above mu_{G0}^+ the Bayes price
/// against G0, full hedging x_d/2 in between.
inline Quote knight_price(double x_d, const Band& band, const Utility& u, double tol = kDefaultTol) {
  if (x_d < band.mu_g1_minus) return {bayes_price(x_d, band.g1, u, tol), Regime::bayes_low};
  if (x_d > band.mu_g0_plus) return {bayes_price(x_d, band.g0, u, tol), Regime::bayes_high};
  return {maxmin_price(x_d), Regime::hedge};
}

/// Full uncertainty on [a, b]. Below a the supremum a/2 is not attained and
/// the quote undercuts it by delta.
inline Quote interval_price(double x_d, double a, double b, double delta = kDefaultDelta) {
  if (a > b) throw OrderingError("interval_price: requires a <= b");
  if (!(delta > 0.0)) throw InvalidParameter("interval_price: requires delta > 0");
  if (x_d > b) return {0.5 * b, Regime::bayes_high};
  if (x_d < a) return {0.5 * a - delta, Regime::approx_sup};
  return {0.5 * x_d, Regime::hedge};
}

inline Quote correlated_price(double x_d, const BandFactory& factory, const Utility& u,
                              double tol = kDefaultTol) {
  return knight_price(x_d, factory(x_d), u, tol);
}

/// Closed-form hedging condition for bands around Tri^{x_D}.
inline bool triangular_hedge_test(double x_d, double eps) {
  if (x_d <= 0.5 && std::sqrt(0.5 * x_d) - eps <= x_d) return true;
  if (x_d >= 0.5 && x_d <= 1.0 + eps - std::sqrt(0.5 * (1.0 - x_d))) return true;
  return false;
}

namespace detail {

inline void fill(PricePolicy& pol, std::size_t grid_n) {
  if (grid_n < 2) throw InvalidParameter("sweep: requires grid_n >= 2");
  pol.grid = uniform_grid(pol.support, grid_n);
  pol.prices.reserve(grid_n);
  pol.regimes.reserve(grid_n);
  for (double x : pol.grid) {
    const Quote q = pol.quote(x);
    pol.prices.push_back(q.price);
    pol.regimes.push_back(q.regime);
  }
}

}  // namespace detail

inline PricePolicy sweep_policy(const Band& band, const Utility& u, std::size_t grid_n,
                                double tol = kDefaultTol) {
  PricePolicy pol;
  pol.kink_lo = band.mu_g1_minus;
  pol.kink_hi = band.mu_g0_plus;
  pol.support = band.support();
  pol.utility = u;
  pol.label = band.label;
  pol.quote = [band, u, tol](double x) { return knight_price(x, band, u, tol); };
  detail::fill(pol, grid_n);
  return pol;
}

inline constexpr std::size_t kKinkScanGrid = 1001;

/// Sweep under a valuation-dependent band. The hedge set is located by a
/// scan followed by bisection on the median test.
inline PricePolicy sweep_policy(const BandFactory& factory, const Utility& u, std::size_t grid_n,
                                double tol = kDefaultTol) {
  if (factory.mode == BandMode::iid) return sweep_policy(factory(factory.support.lo), u, grid_n, tol);
  PricePolicy pol;
  pol.support = factory.support;
  pol.utility = u;
  pol.label = "correlated";
  pol.quote = [factory, u, tol](double x) { return correlated_price(x, factory, u, tol); };

  auto hedges = [&](double x) {
    const Band b = factory(x);
    return b.mu_g1_minus <= x && x <= b.mu_g0_plus;
  };
  const auto scan = uniform_grid(factory.support, kKinkScanGrid);
  std::size_t first = scan.size(), last = scan.size();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (hedges(scan[i])) {
      if (first == scan.size()) first = i;
      last = i;
    }
  }
  if (first == scan.size()) {
    pol.kink_lo = factory.support.hi;
    pol.kink_hi = factory.support.lo;
  } else {
    pol.kink_lo = scan[first];
    if (first > 0) {
      pol.kink_lo = detail::bisect_predicate([&](double x) { return !hedges(x); }, scan[first - 1], scan[first])
                        .second;
    }
    pol.kink_hi = scan[last];
    if (last + 1 < scan.size()) {
      pol.kink_hi = detail::bisect_predicate(hedges, scan[last], scan[last + 1]).first;
    }
  }
  detail::fill(pol, grid_n);
  return pol;
}

inline PricePolicy sweep_interval_policy(double a, double b, Interval support, std::size_t grid_n,
                                         double delta = kDefaultDelta, const Utility& u = {}) {
  const Band band = interval_band(a, b, support);
  PricePolicy pol;
  pol.kink_lo = a;
  pol.kink_hi = b;
  pol.support = support;
  pol.utility = u;
  pol.label = band.label;
  pol.quote = [a, b, delta](double x) { return interval_price(x, a, b, delta); };
  detail::fill(pol, grid_n);
  return pol;
}

}  // namespace tso
