#pragma once

// Utilities and the divider's expected payoff for a given announced price.

#include <cmath>
#include <cstdio>
#include <string>

#include "tso/band.hpp"
#include "tso/dist.hpp"
#include "tso/error.hpp"

namespace tso {

enum class UtilityKind { identity, cara };

/// Strictly increasing concave utility of wealth.
/// cara(rho) is u(w) = (1 - exp(-rho w)) / rho.
struct Utility {
  UtilityKind kind = UtilityKind::identity;
  double rho = 0.0;

  static Utility identity() { return {}; }
  static Utility cara(double rho) {
    if (!(rho > 0.0)) throw InvalidParameter("cara: requires rho > 0");
    return {UtilityKind::cara, rho};
  }

  double operator()(double w) const {
    if (kind == UtilityKind::identity) return w;
    return -std::expm1(-rho * w) / rho;
  }
  double derivative(double w) const {
    if (kind == UtilityKind::identity) return 1.0;
    return std::exp(-rho * w);
  }
  bool is_identity() const { return kind == UtilityKind::identity; }

  std::string name() const {
    if (kind == UtilityKind::identity) return "identity";
    char buf[48];
    std::snprintf(buf, sizeof buf, "cara(%.12g)", rho);
    return buf;
  }
};

enum class Action { sell, buy };

/// The chooser sells when indifferent.
inline Action chooser_decision(double x_c, double p) { return x_c <= 2.0 * p ? Action::sell : Action::buy; }

/// Divider's price announcement under full ambiguity: p = x_D / 2.
inline double maxmin_price(double x_d) { return 0.5 * x_d; }

/// pi_F(p | x_D) = u(x_D - p) F(2p) + u(p) (1 - F(2p)).
inline double bayes_payoff(double p, double x_d, const Cdf& f, const Utility& u) {
  const double F = f(2.0 * p);
  return u(x_d - p) * F + u(p) * (1.0 - F);
}

/// d/dp of bayes_payoff on a smooth piece of F.
inline double bayes_payoff_slope(double p, double x_d, const Cdf& f, const Utility& u) {
  const double F = f(2.0 * p);
  return -u.derivative(x_d - p) * F + u.derivative(p) * (1.0 - F) +
         2.0 * f.density(2.0 * p) * (u(x_d - p) - u(p));
}

/// Worst case over the band: G0 is the minimizer left of the hedge point
/// 2p = x_D and G1 right of it.
inline double worst_case_payoff(double p, double x_d, const Band& band, const Utility& u) {
  const double two_p = 2.0 * p;
  if (two_p < x_d) return bayes_payoff(p, x_d, band.g0, u);
  if (two_p > x_d) return bayes_payoff(p, x_d, band.g1, u);
  return u(0.5 * x_d);
}

}  // namespace tso
