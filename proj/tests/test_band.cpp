#include <gtest/gtest.h>

#include <cmath>

#include "formulas.hpp"
#include "tso/band.hpp"

using namespace tso;

TEST(EpsShift, UniformBoundsAreShiftedCdfs) {
  const Band b = eps_shift_band(make_cdf(Uniform{0, 1}), 0.2);
  for (double x : uniform_grid({0, 1}, 101)) {
    if (x < 1) {
      EXPECT_NEAR(b.g0(x), std::max(0.0, x - 0.2), 1e-15) << x;
    }
    EXPECT_NEAR(b.g1(x), std::min(1.0, x + 0.2), 1e-15) << x;
  }
  EXPECT_EQ(b.g0(1.0), 1.0);
  EXPECT_NEAR(b.g0.left_limit(1.0), 0.8, 1e-15);
  EXPECT_NEAR(b.g0.atom_mass(1.0), 0.2, 1e-15);
  EXPECT_NEAR(b.g1.atom_mass(0.0), 0.2, 1e-15);
  EXPECT_NEAR(b.mu_g1_minus, 0.3, 1e-15);
  EXPECT_NEAR(b.mu_g0_plus, 0.7, 1e-15);
  EXPECT_NEAR(b.alpha, 0.2, 1e-15);
  EXPECT_NEAR(b.beta_pt, 0.8, 1e-15);
}

TEST(EpsShift, ZeroEpsCollapsesToReference) {
  const Cdf f = make_cdf(Uniform{0, 1});
  const Band b = eps_shift_band(f, 0.0);
  for (double x : uniform_grid({0, 1}, 11)) {
    EXPECT_EQ(b.g0(x), f(x));
    EXPECT_EQ(b.g1(x), f(x));
  }
  EXPECT_EQ(b.mu_g1_minus, 0.5);
  EXPECT_EQ(b.mu_g0_plus, 0.5);
  EXPECT_EQ(b.alpha, 0.0);
  EXPECT_EQ(b.beta_pt, 1.0);
}

TEST(EpsShift, MedianOfLowerBoundShiftsByEps) {
  const Band b = eps_shift_band(make_cdf(Uniform{0, 1}), 0.2);
  const auto mb = median_bracket(b.g1);
  EXPECT_NEAR(mb.lower, 0.3, 1e-14);
  EXPECT_NEAR(mb.upper, 0.3, 1e-14);
}

TEST(EpsShift, CachedQuantitiesAgreeWithNumericSearch) {
  for (const DistFamily& fam : {DistFamily{Uniform{0, 1}}, DistFamily{Triangular{0, 1, 0.3}},
                                DistFamily{TruncNormal{0, 1, 0, 1}}, DistFamily{Beta{2, 3}}}) {
    for (double e : {0.0, 0.05, 0.2, 0.45, 0.8, 1.5}) {
      SCOPED_TRACE(describe(fam) + " eps=" + std::to_string(e));
      const Band b = eps_shift_band(make_cdf(fam), e);
      const Band n = make_band(b.g0, b.g1);
      EXPECT_NEAR(b.mu_g1_minus, n.mu_g1_minus, 1e-10);
      EXPECT_NEAR(b.mu_g0_plus, n.mu_g0_plus, 1e-10);
      if (e > 0) {
        EXPECT_NEAR(b.alpha, n.alpha, 1e-10);
        EXPECT_NEAR(b.beta_pt, n.beta_pt, 1e-10);
      }
      EXPECT_LE(b.mu_g1_minus, b.mu_g0_plus);
      EXPECT_LE(b.alpha, b.mu_g0_plus);
      EXPECT_LE(b.mu_g1_minus, b.beta_pt);
    }
  }
}

TEST(EpsShift, InteriorMediansShiftByEps) {
  for (double c : {0.2, 0.5, 0.8}) {
    const Cdf f = make_cdf(Triangular{0, 1, c});
    const double med = ref::triangular_median(c);
    for (double e : {0.01, 0.1}) {
      const Band b = eps_shift_band(f, e);
      EXPECT_NEAR(b.mu_g1_minus, med - e, 1e-12);
      EXPECT_NEAR(b.mu_g0_plus, med + e, 1e-12);
    }
  }
}

TEST(EpsShift, WiderBandContainsNarrower) {
  const Cdf f = make_cdf(Triangular{0, 1, 0.4});
  const double eps[] = {0.0, 0.05, 0.1, 0.3, 0.7, 1.2};
  for (std::size_t i = 0; i + 1 < std::size(eps); ++i) {
    const Band narrow = eps_shift_band(f, eps[i]);
    const Band wide = eps_shift_band(f, eps[i + 1]);
    for (double x : uniform_grid({0, 1}, 1001)) {
      EXPECT_LE(wide.g0(x), narrow.g0(x) + 1e-15);
      EXPECT_GE(wide.g1(x), narrow.g1(x) - 1e-15);
    }
  }
}

TEST(EpsShift, HugeEpsIsFullUncertainty) {
  const Band b = eps_shift_band(make_cdf(Uniform{0, 1}), 1.5);
  for (double x : uniform_grid({0, 1}, 101)) {
    EXPECT_EQ(b.g1(x), 1.0);
    EXPECT_EQ(b.g0(x), x < 1 ? 0.0 : 1.0);
  }
  EXPECT_EQ(b.mu_g1_minus, 0.0);
  EXPECT_EQ(b.mu_g0_plus, 1.0);
}

TEST(EpsShift, NegativeEpsRejected) {
  EXPECT_THROW(eps_shift_band(make_cdf(Uniform{0, 1}), -0.1), InvalidParameter);
}

TEST(IntervalBand, BracketIsExactlyAB) {
  const Band b = interval_band(0.2, 0.7, {0, 1});
  EXPECT_EQ(b.mu_g1_minus, 0.2);
  EXPECT_EQ(b.mu_g0_plus, 0.7);
  EXPECT_EQ(median_bracket(b.g1).lower, 0.2);
  EXPECT_EQ(median_bracket(b.g0).upper, 0.7);
  EXPECT_EQ(b.g1(0.2), 1.0);
  EXPECT_EQ(b.g0.left_limit(0.7), 0.0);
  EXPECT_EQ(b.g0(0.7), 1.0);
}

TEST(IntervalBand, Certainty) {
  const Band b = interval_band(0.5, 0.5, {0, 1});
  EXPECT_EQ(b.g0(0.5), 1.0);
  EXPECT_EQ(b.g1.left_limit(0.5), 0.0);
}

TEST(IntervalBand, OrderingErrors) {
  EXPECT_THROW(interval_band(0.7, 0.2, {0, 1}), OrderingError);
  EXPECT_THROW(interval_band(0.2, 1.7, {0, 1}), InvalidParameter);
}

TEST(MakeBand, RejectsDominanceViolation) {
  const Cdf lo = make_cdf(Uniform{0, 1});
  const Cdf hi = make_cdf(Triangular{0, 1, 0.5});
  EXPECT_THROW(make_band(lo, hi), OrderingError);
}

TEST(Factory, CorrelatedTriangular) {
  const BandFactory fac = correlated_triangular_factory(0.2);
  EXPECT_EQ(fac.mode, BandMode::correlated);
  const Band b = fac(0.5);
  EXPECT_NEAR(b.mu_g1_minus, 0.3, 1e-12);
  EXPECT_NEAR(b.mu_g0_plus, 0.7, 1e-12);
  const Band d = correlated_triangular_factory(0.0)(0.3);
  const Cdf tri = make_cdf(Triangular{0, 1, 0.3});
  for (double x : uniform_grid({0, 1}, 51)) {
    EXPECT_EQ(d.g0(x), tri(x));
    EXPECT_EQ(d.g1(x), tri(x));
  }
}

TEST(Factory, IidBuilderIgnoresValuation) {
  const BandFactory fac = iid_factory(eps_shift_band(make_cdf(Uniform{0, 1}), 0.1));
  const Band a = fac(0.1), b = fac(0.9);
  EXPECT_EQ(a.mu_g1_minus, b.mu_g1_minus);
  for (double x : uniform_grid({0, 1}, 21)) EXPECT_EQ(a.g0(x), b.g0(x));
}
