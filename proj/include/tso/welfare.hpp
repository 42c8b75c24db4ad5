#pragma once

// Interim worst-case expected utilities of divider and chooser for
// risk-neutral agents, and the allocative-efficiency map.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tso/band.hpp"
#include "tso/dist.hpp"
#include "tso/error.hpp"
#include "tso/interval.hpp"
#include "tso/payoff.hpp"
#include "tso/quadrature.hpp"
#include "tso/solver.hpp"

namespace tso {

inline constexpr double kDefaultQuadTol = 1e-8;
inline constexpr double kKinkTol = 1e-9;

inline void require_identity(const Utility& u, const char* what) {
  if (!u.is_identity()) {
    throw UnsupportedUtility(std::string(what) + " is defined for risk-neutral agents only, got " + u.name());
  }
}

/// Phi_D(x): the divider's worst-case payoff at the optimal announcement.
inline double phi_divider(double x, const Band& band, double tol = kDefaultTol) {
  const Utility id;
  return worst_case_payoff(knight_price(x, band, id, tol).price, x, band, id);
}

/// Phi_D(x) for the announcement rule of an existing policy.
inline double phi_divider(double x, const PricePolicy& policy, const Band& band) {
  require_identity(policy.utility, "phi_divider");
  return worst_case_payoff(policy.m(x), x, band, policy.utility);
}

/// Valuation z with 2 m(z) = x_c: midpoint of the preimage
/// [inf{z : 2m(z) >= x_c}, sup{z : 2m(z) <= x_c}].
inline double policy_preimage(double x_c, const PricePolicy& policy) {
  const auto [xl, xh] = policy.support;
  const Quote q = policy.quote(std::clamp(x_c, xl, xh));
  if (q.regime == Regime::hedge && policy.support.contains(x_c)) return x_c;
  auto two_m = [&](double z) { return 2.0 * policy.m(z); };
  double lo = xl, hi = xh;
  if (two_m(xl) < x_c) {
    lo = detail::bisect_predicate([&](double z) { return two_m(z) < x_c; }, xl, xh).second;
    if (two_m(xh) < x_c) lo = xh;
  }
  if (two_m(xh) > x_c) {
    hi = detail::bisect_predicate([&](double z) { return two_m(z) <= x_c; }, xl, xh).first;
    if (two_m(xl) > x_c) hi = xl;
  }
  return 0.5 * (lo + hi);
}

/// Where the chooser's worst-case belief switches from G0 to G1.
struct ChooserSwitch {
  enum class Case { all_g1, composite, all_g0 } which = Case::composite;
  double z_star = 0.0;
};

inline ChooserSwitch chooser_switch(double x_c, const PricePolicy& policy) {
  const auto [xl, xh] = policy.support;
  if (x_c < 2.0 * policy.m(xl)) return {ChooserSwitch::Case::all_g1, xl};
  if (x_c > 2.0 * policy.m(xh)) return {ChooserSwitch::Case::all_g0, xh};
  return {ChooserSwitch::Case::composite, policy_preimage(x_c, policy)};
}

/// The chooser's worst-case belief about the divider's valuation: G1 when
/// every announced price favours buying, G0 when every price favours selling,
/// otherwise G0 below z* and G1 from z* on.
inline Cdf chooser_worst_cdf(double x_c, const PricePolicy& policy, const Band& band) {
  const ChooserSwitch sw = chooser_switch(x_c, policy);
  if (sw.which == ChooserSwitch::Case::all_g1) return band.g1;
  if (sw.which == ChooserSwitch::Case::all_g0) return band.g0;
  const double z = sw.z_star;
  const Cdf g0 = band.g0, g1 = band.g1;

  std::vector<double> kinks{z};
  for (double k : g0.kinks()) {
    if (k < z) kinks.push_back(k);
  }
  for (double k : g1.kinks()) {
    if (k > z) kinks.push_back(k);
  }
  std::vector<Atom> atoms;
  for (const auto& a : g0.atoms()) {
    if (a.at < z) atoms.push_back(a);
  }
  atoms.push_back({z, g1(z) - g0.left_limit(z)});
  for (const auto& a : g1.atoms()) {
    if (a.at > z) atoms.push_back(a);
  }
  Cdf::Fn slope;
  if (g0.has_density_slope() && g1.has_density_slope()) {
    slope = [g0, g1, z](double x) { return x < z ? *g0.density_slope(x) : *g1.density_slope(x); };
  }
  return Cdf(
      band.support(), [g0, g1, z](double x) { return x < z ? g0(x) : g1(x); },
      [g0, g1, z](double x) { return x < z ? g0.density(x) : g1.density(x); }, std::move(kinks),
      std::move(atoms), slope);
}

/// E_G[h] over the atoms and the absolutely continuous part of G.
template <class H>
double expectation(const Cdf& g, H&& h, std::vector<double> splits, double quad_tol = kDefaultQuadTol) {
  double sum = 0.0;
  for (const auto& a : g.atoms()) sum += a.mass * h(a.at);
  for (double k : g.kinks()) splits.push_back(k);
  for (const auto& a : g.atoms()) splits.push_back(a.at);
  const auto [xl, xh] = g.support();
  sum += integrate([&](double z) { return h(z) * g.density(z); }, xl, xh, std::move(splits), quad_tol).value;
  return sum;
}

namespace detail {

inline std::vector<double> welfare_splits(const PricePolicy& policy, const Band& band) {
  std::vector<double> s{band.alpha, band.beta_pt, band.mu_g1_minus, band.mu_g0_plus, policy.kink_lo,
                        policy.kink_hi};
  for (double k : band.g0.kinks()) s.push_back(k);
  for (double k : band.g1.kinks()) s.push_back(k);
  return s;
}

}  // namespace detail

/// Phi_C(x_c): the chooser's expected payoff max{x_c - m(z), m(z)} under the
/// worst-case belief about the divider's valuation z.
inline double phi_chooser(double x_c, const PricePolicy& policy, const Band& band,
                          double quad_tol = kDefaultQuadTol) {
  require_identity(policy.utility, "phi_chooser");
  const ChooserSwitch sw = chooser_switch(x_c, policy);
  const Cdf& g0 = band.g0;
  const Cdf& g1 = band.g1;
  const auto [xl, xh] = band.support();
  auto m = [&](double z) { return policy.m(z); };
  auto splits = detail::welfare_splits(policy, band);

  if (sw.which == ChooserSwitch::Case::all_g1) {
    return expectation(g1, m, std::move(splits), quad_tol);
  }
  if (sw.which == ChooserSwitch::Case::all_g0) {
    return expectation(g0, [&](double z) { return x_c - m(z); }, std::move(splits), quad_tol);
  }

  const double z = sw.z_star;
  splits.push_back(z);
  double total = 0.0;
  for (const auto& a : g0.atoms()) {
    if (a.at < z) total += a.mass * (x_c - m(a.at));
  }
  total += (g1(z) - g0.left_limit(z)) * 0.5 * x_c;
  for (const auto& a : g1.atoms()) {
    if (a.at > z) total += a.mass * m(a.at);
  }
  const double w = xh - xl;
  const double tol_lo = w > 0.0 ? quad_tol * (z - xl) / w : quad_tol;
  const double tol_hi = w > 0.0 ? quad_tol * (xh - z) / w : quad_tol;
  total += integrate([&](double t) { return (x_c - m(t)) * g0.density(t); }, xl, z, splits, tol_lo).value;
  total += integrate([&](double t) { return m(t) * g1.density(t); }, z, xh, splits, tol_hi).value;
  return total;
}

struct PhiDerivatives {
  double d_phi_d = 0.0;
  double d_phi_c = 0.0;
};

/// Closed-form derivatives of Phi_D and Phi_C away from regime boundaries.
/// Throws KinkError within 1e-9 of mu_{G1}^-, mu_{G0}^+, 2m(x_l) or 2m(x_h).
inline PhiDerivatives phi_derivatives(double x, const PricePolicy& policy, const Band& band) {
  require_identity(policy.utility, "phi_derivatives");
  const auto [xl, xh] = band.support();
  const double lo2 = 2.0 * policy.m(xl);
  const double hi2 = 2.0 * policy.m(xh);
  for (double k : {band.mu_g1_minus, band.mu_g0_plus, lo2, hi2}) {
    if (std::abs(x - k) <= kKinkTol) throw KinkError("phi_derivatives: x is at a regime boundary");
  }
  PhiDerivatives d;
  const Quote q = policy.quote(x);
  switch (q.regime) {
    case Regime::bayes_low:
    case Regime::approx_sup:
      d.d_phi_d = band.g1(2.0 * q.price);
      break;
    case Regime::bayes_high:
      d.d_phi_d = band.g0(2.0 * q.price);
      break;
    case Regime::hedge:
      d.d_phi_d = 0.5;
      break;
  }
  if (x < lo2) {
    d.d_phi_c = 0.0;
  } else if (x > hi2) {
    d.d_phi_c = 1.0;
  } else {
    const double z = policy_preimage(x, policy);
    d.d_phi_c = 0.5 * (band.g1(z) + band.g0(z));
  }
  return d;
}

struct WelfareCurve {
  std::vector<double> grid;
  std::vector<double> phi_d;
  std::vector<double> phi_c;
  std::optional<Interval> equality_band;
  std::string eps_label;
};

/// Samples both interim utilities. Where beta <= alpha the two coincide with
/// x/2 on [beta, alpha], which is reported as the equality band.
inline WelfareCurve compare_roles(const Band& band, const PricePolicy& policy, std::size_t grid_n,
                                  double quad_tol = kDefaultQuadTol) {
  require_identity(policy.utility, "compare_roles");
  WelfareCurve wc;
  wc.eps_label = band.label;
  wc.grid = uniform_grid(band.support(), grid_n);
  for (double x : wc.grid) {
    wc.phi_d.push_back(phi_divider(x, policy, band));
    wc.phi_c.push_back(phi_chooser(x, policy, band, quad_tol));
  }
  if (band.beta_pt <= band.alpha) wc.equality_band = Interval{band.beta_pt, band.alpha};
  return wc;
}

struct EfficiencyRegion {
  double x_d = 0.0;
  /// Chooser valuations for which the divider keeps the firm although the
  /// chooser values it more, or vice versa.
  std::optional<Interval> bad_interval;
};

inline EfficiencyRegion efficiency_region(double x_d, const PricePolicy& policy) {
  const Quote q = policy.quote(x_d);
  const double two_m = 2.0 * q.price;
  switch (q.regime) {
    case Regime::hedge:
      return {x_d, std::nullopt};
    case Regime::bayes_low:
    case Regime::approx_sup:
      return {x_d, Interval{x_d, two_m}};
    case Regime::bayes_high:
      return {x_d, Interval{two_m, x_d}};
  }
  return {x_d, std::nullopt};
}

/// Trapezoidal integral over x_d of the length of the misallocation interval.
inline double inefficiency_area(const PricePolicy& policy, std::size_t grid_n) {
  if (grid_n < 2) throw InvalidParameter("inefficiency_area: requires grid_n >= 2");
  const auto xs = uniform_grid(policy.support, grid_n);
  auto len = [&](double x) {
    const auto r = efficiency_region(x, policy);
    return r.bad_interval ? r.bad_interval->width() : 0.0;
  };
  double area = 0.0;
  double prev = len(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = len(xs[i]);
    area += 0.5 * (prev + cur) * (xs[i] - xs[i - 1]);
    prev = cur;
  }
  return area;
}

}  // namespace tso
