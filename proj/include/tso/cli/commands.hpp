#pragma once

// Command implementations behind the `tso` executable. Each returns the text
// to emit; file handling lives in the executable.

#include <array>
#include <ostream>
#include <string>

#include "tso/band.hpp"
#include "tso/cli/emit.hpp"
#include "tso/cli/scenario.hpp"
#include "tso/dist.hpp"
#include "tso/oracle.hpp"
#include "tso/payoff.hpp"
#include "tso/qc.hpp"
#include "tso/solver.hpp"
#include "tso/welfare.hpp"

namespace tso::cli {

/// Band the divider faces at x_d. Correlated mode always works on
/// Tri^{x_D} over [0, 1] and ignores `dist`.
inline Band scenario_band(const Scenario& sc, double x_d = 0.0) {
  switch (sc.mode) {
    case Mode::iid:
      return eps_shift_band(make_cdf(sc.dist), sc.eps);
    case Mode::correlated:
      return correlated_triangular_factory(sc.eps)(x_d);
    case Mode::interval:
      return interval_band(*sc.a, *sc.b, make_cdf(sc.dist).support());
  }
  return eps_shift_band(make_cdf(sc.dist), sc.eps);
}

inline PricePolicy scenario_policy(const Scenario& sc) {
  switch (sc.mode) {
    case Mode::iid:
      return sweep_policy(scenario_band(sc), sc.utility, sc.grid_n, sc.tol);
    case Mode::correlated:
      return sweep_policy(correlated_triangular_factory(sc.eps), sc.utility, sc.grid_n, sc.tol);
    case Mode::interval:
      return sweep_interval_policy(*sc.a, *sc.b, make_cdf(sc.dist).support(), sc.grid_n, sc.delta, sc.utility);
  }
  return {};
}

inline Quote scenario_quote(const Scenario& sc, double x) {
  switch (sc.mode) {
    case Mode::iid:
      return knight_price(x, scenario_band(sc), sc.utility, sc.tol);
    case Mode::correlated:
      return correlated_price(x, correlated_triangular_factory(sc.eps), sc.utility, sc.tol);
    case Mode::interval:
      return interval_price(x, *sc.a, *sc.b, sc.delta);
  }
  return {};
}

inline std::string cmd_price(const Scenario& sc, double x) { return price_line(x, scenario_quote(sc, x)) + "\n"; }

inline std::string cmd_sweep(const Scenario& sc) { return sweep_csv(scenario_policy(sc)); }

inline std::string cmd_welfare(const Scenario& sc) {
  require_identity(sc.utility, "welfare");
  if (sc.mode == Mode::correlated) {
    throw InvalidParameter("welfare: chooser beliefs need a band that does not depend on x_D");
  }
  const Band band = scenario_band(sc);
  const PricePolicy policy = scenario_policy(sc);
  return welfare_csv(compare_roles(band, policy, sc.grid_n, sc.quad_tol));
}

inline std::string cmd_efficiency(const Scenario& sc) {
  const PricePolicy policy = scenario_policy(sc);
  return efficiency_csv(policy, sc.grid_n);
}

inline constexpr double kCheckOracleTol = 1e-6;
inline constexpr std::size_t kCheckQcGrid = 2001;

/// Prints the SHRC verdict (advisory), quasiconcavity of both bound payoffs
/// at five valuations, and the oracle comparison. Returns true iff the qc
/// and oracle checks pass.
inline bool cmd_check(const Scenario& sc, std::ostream& out) {
  bool ok = true;
  if (sc.mode == Mode::iid) {
    try {
      const ShrcReport r = check_shrc(make_cdf(sc.dist));
      out << "shrc: " << (r.holds ? "holds" : "fails") << " (" << r.violations.size()
          << " violations, advisory)";
      if (!r.holds) {
        out << " first x=" << fmt(r.violations.front().x) << " last x=" << fmt(r.violations.back().x);
      }
      out << "\n";
    } catch (const ZeroDensityError& e) {
      out << "shrc: not applicable (" << e.what() << ", advisory)\n";
    }
  } else {
    out << "shrc: skipped for mode " << to_string(sc.mode) << "\n";
  }

  const Interval sup = sc.mode == Mode::correlated ? Interval{0.0, 1.0} : make_cdf(sc.dist).support();
  for (double frac : std::array{0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double x_d = sup.lo + frac * sup.width();
    const Band band = scenario_band(sc, x_d);
    const Interval prices{0.5 * sup.lo, 0.5 * sup.hi};
    const auto q0 = qc_grid_check([&](double p) { return bayes_payoff(p, x_d, band.g0, sc.utility); }, prices,
                                  kCheckQcGrid);
    const auto q1 = qc_grid_check([&](double p) { return bayes_payoff(p, x_d, band.g1, sc.utility); }, prices,
                                  kCheckQcGrid);
    const bool pass = q0.ok && q1.ok;
    ok = ok && pass;
    out << "qc x_d=" << fmt(x_d) << ": " << (pass ? "pass" : "FAIL");
    if (!q0.ok) out << " (g0 dip at p=" << fmt(q0.witness_x[1]) << ")";
    if (!q1.ok) out << " (g1 dip at p=" << fmt(q1.witness_x[1]) << ")";
    out << "\n";
  }

  const PricePolicy policy = scenario_policy(sc);
  const OracleReport rep = sc.mode == Mode::correlated
                               ? verify_policy(policy, correlated_triangular_factory(sc.eps), sc.utility,
                                               kCheckOracleTol)
                               : verify_policy(policy, scenario_band(sc), sc.utility, kCheckOracleTol);
  ok = ok && rep.passed;
  out << "oracle: " << (rep.passed ? "pass" : "FAIL") << " max_gap=" << fmt(rep.max_abs_gap)
      << " worst_x=" << fmt(rep.worst_input) << " samples=" << rep.samples << "\n";
  out << (ok ? "result: pass" : "result: FAIL") << "\n";
  return ok;
}

inline std::string cmd_plot(const std::string& csv_text) { return plot_svg(csv_text); }

}  // namespace tso::cli
