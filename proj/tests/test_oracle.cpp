#include <gtest/gtest.h>

#include "tso/oracle.hpp"
#include "tso/welfare.hpp"

using namespace tso;

namespace {

Band uniform_band(double eps) { return eps_shift_band(make_cdf(Uniform{0, 1}), eps); }

}  // namespace

TEST(GridArgmax, Examples) {
  const Utility id;
  EXPECT_NEAR(grid_argmax_price(0.5, uniform_band(0.2), id).price, 0.25, 5e-5);
  EXPECT_NEAR(grid_argmax_price(1.0, uniform_band(0.0), id).price, 0.375, 5e-5);
  EXPECT_NEAR(grid_argmax_price(0.9, interval_band(0.2, 0.7), id).price, 0.35, 5e-5);
  EXPECT_THROW(grid_argmax_price(0.5, uniform_band(0.2), id, 2), InvalidParameter);
}

TEST(VerifyPolicy, UniformScenarios) {
  for (double e : {0.0, 0.05, 0.2, 0.4, 0.6}) {
    const Band b = uniform_band(e);
    const auto rep = verify_policy(sweep_policy(b, Utility{}, 21), b, Utility{}, 1e-6);
    EXPECT_TRUE(rep.passed) << "eps=" << e << " gap=" << rep.max_abs_gap << " at " << rep.worst_input;
    EXPECT_EQ(rep.samples, 21u);
  }
}

TEST(VerifyPolicy, TriangularAndCorrelated) {
  const Band tri = eps_shift_band(make_cdf(Triangular{0, 1, 0.5}), 0.2);
  EXPECT_TRUE(verify_policy(sweep_policy(tri, Utility{}, 21), tri, Utility{}, 1e-6).passed);
  for (double e : {0.05, 0.2}) {
    const BandFactory fac = correlated_triangular_factory(e);
    const auto rep = verify_policy(sweep_policy(fac, Utility{}, 21), fac, Utility{}, 1e-6);
    EXPECT_TRUE(rep.passed) << "eps=" << e << " gap=" << rep.max_abs_gap;
  }
}

TEST(VerifyPolicy, IntervalAndRiskAverse) {
  const Band iv = interval_band(0.2, 0.7);
  EXPECT_TRUE(verify_policy(sweep_interval_policy(0.2, 0.7, {0, 1}, 21), iv, Utility{}, 1e-6).passed);
  const Utility cara = Utility::cara(2.0);
  const Band b = eps_shift_band(make_cdf(Triangular{0, 1, 0.3}), 0.1);
  EXPECT_TRUE(verify_policy(sweep_policy(b, cara, 21), b, cara, 1e-6).passed);
}

TEST(VerifyPolicy, CorruptedPolicyFails) {
  const Band b = uniform_band(0.2);
  PricePolicy pol = sweep_policy(b, Utility{}, 21);
  for (double& p : pol.prices) p += 0.05;
  const auto rep = verify_policy(pol, b, Utility{}, 1e-6);
  EXPECT_FALSE(rep.passed);
  EXPECT_GT(rep.max_abs_gap, 1e-3);
  EXPECT_GE(rep.worst_input, 0.0);
  EXPECT_LE(rep.worst_input, 1.0);
}

TEST(ChooserScan, Examples) {
  {
    const Band b = uniform_band(0.02);
    EXPECT_NEAR(chooser_worst_scan(0.0, sweep_policy(b, Utility{}, 11), b), 0.24485, 1e-6);
  }
  {
    const Band b = uniform_band(0.6);
    EXPECT_NEAR(chooser_worst_scan(0.5, sweep_policy(b, Utility{}, 11), b), 0.25, 1e-6);
  }
  {
    const Band b = uniform_band(0.2);
    const PricePolicy pol = sweep_policy(b, Utility{}, 11);
    const double under_g1 =
        expectation(b.g1, [&](double z) { return std::max(0.1 - pol.m(z), pol.m(z)); }, {0.3, 0.7}, 1e-12);
    EXPECT_NEAR(chooser_worst_scan(0.1, pol, b), under_g1, 1e-6);
  }
}

TEST(ChooserScan, AgreesWithPhiChooser) {
  struct Case {
    DistFamily fam;
    double eps;
  };
  for (const Case& c : {Case{Uniform{0, 1}, 0.0}, Case{Uniform{0, 1}, 0.02}, Case{Uniform{0, 1}, 0.2},
                        Case{Uniform{0, 1}, 0.4}, Case{Uniform{0, 1}, 0.6}, Case{Triangular{0, 1, 0.5}, 0.2}}) {
    const Band b = eps_shift_band(make_cdf(c.fam), c.eps);
    const PricePolicy pol = sweep_policy(b, Utility{}, 11);
    const ChooserScanner scan(pol, b);
    for (double x : uniform_grid({0, 1}, 21)) {
      EXPECT_NEAR(scan(x), phi_chooser(x, pol, b), 1e-6) << describe(c.fam) << " eps=" << c.eps << " x=" << x;
    }
  }
}
