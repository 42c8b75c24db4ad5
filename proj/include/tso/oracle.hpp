#pragma once

// Brute-force cross-checks for the solver and the welfare module. Nothing
// here reuses the closed-form case analysis; everything is a grid scan.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "tso/band.hpp"
#include "tso/error.hpp"
#include "tso/interval.hpp"
#include "tso/payoff.hpp"
#include "tso/solver.hpp"

namespace tso {

inline constexpr std::size_t kOracleGrid = 20001;

struct OracleReport {
  double max_abs_gap = 0.0;
  double worst_input = 0.0;
  bool passed = true;
  std::size_t samples = 0;
};

struct GridPeak {
  double price = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

/// Best worst-case payoff over n equispaced prices with 2p in [x_l, x_h].
inline GridPeak grid_argmax_price(double x_d, const Band& band, const Utility& u, std::size_t n = kOracleGrid) {
  if (n < 3) throw InvalidParameter("grid_argmax_price: requires n >= 3");
  const auto [xl, xh] = band.support();
  GridPeak best;
  for (double two_p : uniform_grid({xl, xh}, n)) {
    const double p = 0.5 * two_p;
    const double v = worst_case_payoff(p, x_d, band, u);
    if (v > best.value) best = {p, v};
  }
  return best;
}

/// Compares the payoff each grid valuation achieves under the policy with the
/// brute-force optimum. Only shortfalls count: a policy can beat the grid
/// when the optimum lies between grid prices.
template <class BandAt>
OracleReport verify_policy_with(const PricePolicy& policy, BandAt&& band_at, const Utility& u, double tol,
                                std::size_t n) {
  OracleReport rep;
  for (std::size_t i = 0; i < policy.size(); ++i) {
    const double x = policy.grid[i];
    const Band band = band_at(x);
    const double achieved = worst_case_payoff(policy.prices[i], x, band, u);
    const double best = grid_argmax_price(x, band, u, n).value;
    const double gap = std::max(0.0, best - achieved);
    if (gap > rep.max_abs_gap || rep.samples == 0) {
      rep.max_abs_gap = gap;
      rep.worst_input = x;
    }
    ++rep.samples;
  }
  rep.passed = rep.max_abs_gap <= tol;
  return rep;
}

inline OracleReport verify_policy(const PricePolicy& policy, const Band& band, const Utility& u, double tol,
                                  std::size_t n = kOracleGrid) {
  return verify_policy_with(policy, [&](double) -> const Band& { return band; }, u, tol, n);
}

inline OracleReport verify_policy(const PricePolicy& policy, const BandFactory& factory, const Utility& u,
                                  double tol, std::size_t n = kOracleGrid) {
  return verify_policy_with(policy, [&](double x) { return factory(x); }, u, tol, n);
}

/// Minimum of the chooser's expected payoff over switch-form beliefs
/// (G0 below a node z_k, G1 from z_k on), for all nodes of an n-point grid.
///
/// Expectations are Riemann-Stieltjes sums: continuous mass of each cell is
/// charged at the cell midpoint, jumps at the nodes. The policy is tabulated
/// once, so a scanner can be reused for many chooser valuations.
///
/// The expectation has a V-shaped kink in the switch point, so the best node
/// is only first-order accurate; the two cells around it are rescanned with
/// kRefine continuous switch points.
class ChooserScanner {
 public:
  static constexpr int kRefine = 64;

  ChooserScanner(const PricePolicy& policy, const Band& band, std::size_t n = kOracleGrid)
      : nodes_(uniform_grid(band.support(), n)), policy_(policy), g0_(band.g0), g1_(band.g1) {
    if (n < 3) throw InvalidParameter("chooser_worst_scan: requires n >= 3");
    const Cdf& g0 = band.g0;
    const Cdf& g1 = band.g1;
    m_node_.resize(n);
    m_mid_.resize(n);
    cell0_.assign(n, 0.0);
    cell1_.assign(n, 0.0);
    jump0_.resize(n);
    jump1_.resize(n);
    g1_at_.resize(n);
    g0_left_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double z = nodes_[i];
      m_node_[i] = policy.m(z);
      g1_at_[i] = g1(z);
      g0_left_[i] = g0.left_limit(z);
      jump0_[i] = g0(z) - g0_left_[i];
      jump1_[i] = g1(z) - g1.left_limit(z);
      if (i > 0) {
        m_mid_[i] = policy.m(0.5 * (nodes_[i - 1] + z));
        cell0_[i] = g0_left_[i] - g0(nodes_[i - 1]);
        cell1_[i] = g1.left_limit(z) - g1(nodes_[i - 1]);
      }
    }
  }

  double operator()(double x_c) const {
    const std::size_t n = nodes_.size();
    auto h = [&](double m) { return std::max(x_c - m, m); };
    // prefix[k]: G0 contributions of cells 1..k and jumps at nodes 0..k-1
    std::vector<double> prefix(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
      prefix[k] = prefix[k - 1] + jump0_[k - 1] * h(m_node_[k - 1]) + cell0_[k] * h(m_mid_[k]);
    }
    // suffix[k]: G1 contributions of cells k+1..n-1 and jumps at nodes k+1..n-1
    std::vector<double> suffix(n, 0.0);
    for (std::size_t k = n - 1; k-- > 0;) {
      suffix[k] = suffix[k + 1] + cell1_[k + 1] * h(m_mid_[k + 1]) + jump1_[k + 1] * h(m_node_[k + 1]);
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t k_best = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double jump = g1_at_[k] - (k == 0 ? 0.0 : g0_left_[k]);
      const double v = prefix[k] + jump * h(m_node_[k]) + suffix[k];
      if (v < best) {
        best = v;
        k_best = k;
      }
    }
    // switch at z inside cell (z_c, z_{c+1})
    for (std::size_t c : {k_best - 1, k_best}) {
      if (c >= n - 1) continue;  // also catches k_best - 1 wrapping at 0
      const double za = nodes_[c], zb = nodes_[c + 1];
      const double fixed = prefix[c] + jump0_[c] * h(m_node_[c]) + jump1_[c + 1] * h(m_node_[c + 1]) + suffix[c + 1];
      for (int j = 1; j < kRefine; ++j) {
        const double z = za + (zb - za) * j / kRefine;
        const double g0z = g0_.left_limit(z);
        const double v = fixed + (g0z - g0_(za)) * h(policy_.m(0.5 * (za + z))) + (g1_(z) - g0z) * h(policy_.m(z)) +
                         (g1_.left_limit(zb) - g1_(z)) * h(policy_.m(0.5 * (z + zb)));
        best = std::min(best, v);
      }
    }
    return best;
  }

 private:
  std::vector<double> nodes_;
  PricePolicy policy_;
  Cdf g0_, g1_;
  std::vector<double> m_node_, m_mid_;
  std::vector<double> cell0_, cell1_, jump0_, jump1_;
  std::vector<double> g1_at_, g0_left_;
};

inline double chooser_worst_scan(double x_c, const PricePolicy& policy, const Band& band,
                                 std::size_t n = kOracleGrid) {
  return ChooserScanner(policy, band, n)(x_c);
}

}  // namespace tso
