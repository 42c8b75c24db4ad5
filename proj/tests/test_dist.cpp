#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tso/dist.hpp"
#include "tso/quadrature.hpp"

using namespace tso;

namespace {

std::vector<DistFamily> builtins() {
  return {Uniform{0, 1},         Uniform{-1, 3},          Triangular{0, 1, 0.5}, Triangular{0, 1, 0.25},
          Triangular{0, 1, 0},   Triangular{0, 1, 1},     Triangular{2, 5, 3},   TruncNormal{0, 1, 0, 1},
          TruncNormal{-2, 2, 0.5, 0.7}, Beta{0.5, 1},     Beta{2, 1},            Beta{2, 3}};
}

}  // namespace

TEST(Dist, UniformEval) { EXPECT_DOUBLE_EQ(make_cdf(Uniform{0, 1})(0.3), 0.3); }

TEST(Dist, TriangularEval) {
  const Cdf f = make_cdf(Triangular{0, 1, 0.5});
  EXPECT_DOUBLE_EQ(f(0.25), 0.125);
  EXPECT_DOUBLE_EQ(f(0.5), 0.5);
  EXPECT_DOUBLE_EQ(f(0.75), 1 - 0.25 * 0.25 / 0.5);
  const Cdf g = make_cdf(Triangular{0, 1, 0.3});
  EXPECT_DOUBLE_EQ(g(0.3), 0.3);
}

TEST(Dist, BetaHalfOneIsSqrt) {
  const Cdf f = make_cdf(Beta{0.5, 1});
  EXPECT_NEAR(f(0.25), 0.5, 1e-14);
  // the density integrates back to the CDF
  const double mass = integrate([&](double x) { return f.density(x); }, 0.25, 0.81, {}, 1e-12).value;
  EXPECT_NEAR(mass, 0.9 - 0.5, 1e-10);
}

TEST(Dist, InvalidParametersNameTheConstraint) {
  auto msg = [](const DistFamily& d) {
    try {
      (void)make_cdf(d);
    } catch (const InvalidParameter& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(msg(Uniform{1, 1}).find("a < b"), std::string::npos);
  EXPECT_NE(msg(Triangular{0, 1, 2}).find("a <= c <= b"), std::string::npos);
  EXPECT_NE(msg(TruncNormal{0, 1, 0, 0}).find("sigma > 0"), std::string::npos);
  EXPECT_NE(msg(Beta{0, 1}).find("alpha > 0"), std::string::npos);
  EXPECT_NE(msg(Beta{1, -1}).find("beta > 0"), std::string::npos);
}

TEST(Dist, BuiltinsSatisfyCdfInvariants) {
  for (const auto& fam : builtins()) {
    SCOPED_TRACE(describe(fam));
    const Cdf f = make_cdf(fam);
    const auto [lo, hi] = f.support();
    EXPECT_EQ(f(lo - 1e-3), 0.0);
    EXPECT_EQ(f(hi), 1.0);
    double prev = -1;
    for (double x : uniform_grid(f.support(), 101)) {
      EXPECT_GE(f(x), prev);
      EXPECT_LE(f.left_limit(x), f(x));
      // right continuity
      EXPECT_NEAR(f(std::min(hi, x + 1e-12 * (hi - lo))), f(x), 1e-6);
      prev = f(x);
    }
  }
}

TEST(Dist, DensityIntegratesToCdfDifferences) {
  for (const auto& fam : builtins()) {
    SCOPED_TRACE(describe(fam));
    const Cdf f = make_cdf(fam);
    const auto [lo, hi] = f.support();
    const double a = lo + 0.1 * (hi - lo), b = lo + 0.9 * (hi - lo);
    std::vector<double> splits(f.kinks().begin(), f.kinks().end());
    const double mass = integrate([&](double x) { return f.density(x); }, a, b, splits, 1e-10).value;
    EXPECT_NEAR(mass, f(b) - f(a), 1e-8);
  }
}

TEST(Dist, DensitySlopeMatchesFiniteDifferences) {
  for (const auto& fam : builtins()) {
    SCOPED_TRACE(describe(fam));
    const Cdf f = make_cdf(fam);
    ASSERT_TRUE(f.has_density_slope());
    const auto [lo, hi] = f.support();
    for (double t : {0.13, 0.37, 0.61, 0.87}) {
      const double x = lo + t * (hi - lo);
      const double h = 1e-6 * (hi - lo);
      const double fd = (f.density(x + h) - f.density(x - h)) / (2 * h);
      EXPECT_NEAR(*f.density_slope(x), fd, 1e-4 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Dist, DiracHasAtomAndLeftLimit) {
  const Cdf d = make_dirac(0.2, {0, 1});
  EXPECT_EQ(d(0.2), 1.0);
  EXPECT_EQ(d.left_limit(0.2), 0.0);
  EXPECT_EQ(d(0.19), 0.0);
  EXPECT_EQ(d.atom_mass(0.2), 1.0);
  EXPECT_THROW(make_dirac(1.5, {0, 1}), InvalidParameter);
}

TEST(Median, Examples) {
  const auto u = median_bracket(make_cdf(Uniform{0, 1}));
  EXPECT_DOUBLE_EQ(u.lower, 0.5);
  EXPECT_DOUBLE_EQ(u.upper, 0.5);
  const auto d = median_bracket(make_dirac(0.2, {0, 1}));
  EXPECT_DOUBLE_EQ(d.lower, 0.2);
  EXPECT_DOUBLE_EQ(d.upper, 0.2);
}

TEST(Median, FlatCdfGivesWideBracket) {
  // half the mass on [0, 0.2], half on [0.6, 1]
  const Cdf f(
      {0, 1},
      [](double x) { return x < 0.2 ? 2.5 * x : (x < 0.6 ? 0.5 : 0.5 + 1.25 * (x - 0.6)); },
      [](double x) { return x < 0.2 ? 2.5 : (x < 0.6 ? 0.0 : 1.25); }, {0.2, 0.6});
  const auto mb = median_bracket(f);
  EXPECT_DOUBLE_EQ(mb.lower, 0.2);
  EXPECT_DOUBLE_EQ(mb.upper, 0.6);
}

TEST(Median, BracketInvariantsForBuiltins) {
  for (const auto& fam : builtins()) {
    SCOPED_TRACE(describe(fam));
    const Cdf f = make_cdf(fam);
    const auto mb = median_bracket(f);
    EXPECT_TRUE(f.support().contains(mb.lower));
    EXPECT_TRUE(f.support().contains(mb.upper));
    EXPECT_LE(mb.lower, mb.upper);
    EXPECT_GE(f(mb.lower), 0.5);
    EXPECT_LE(f.left_limit(mb.upper), 0.5 + 1e-15);  // F can step over 1/2 between adjacent doubles
    EXPECT_NEAR(mb.lower, mb.upper, 1e-12);
  }
}

TEST(Median, TriangularClosedForm) {
  for (double c : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    const double expect = c >= 0.5 ? std::sqrt(c / 2) : 1 - std::sqrt((1 - c) / 2);
    EXPECT_NEAR(median_bracket(make_cdf(Triangular{0, 1, c})).lower, expect, 1e-14) << "c=" << c;
  }
}

TEST(Shrc, UniformBothDerivativesEqualTwo) {
  const auto r = check_shrc(make_cdf(Uniform{0, 1}));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Shrc, SmoothFamiliesHold) {
  for (const DistFamily& fam : std::vector<DistFamily>{Triangular{0, 1, 0.25}, Triangular{0, 1, 0.5},
                                                       Triangular{0, 1, 0.75}, Triangular{0, 1, 0},
                                                       Triangular{0, 1, 1}, TruncNormal{0, 1, 0, 1}, Beta{1, 1},
                                                       Beta{2, 1}, Beta{3, 1}}) {
    SCOPED_TRACE(describe(fam));
    EXPECT_TRUE(check_shrc(make_cdf(fam)).holds);
  }
}

TEST(Shrc, BetaHalfFailsBelowOneNinth) {
  const auto r = check_shrc(make_cdf(Beta{0.5, 1}));
  ASSERT_FALSE(r.holds);
  for (const auto& v : r.violations) {
    EXPECT_EQ(v.condition, 2);
    EXPECT_LT(v.x, 1.0 / 9 + 1e-3);
    EXPECT_NEAR(v.value, 3 - 1 / std::sqrt(v.x), 1e-9);
  }
  EXPECT_GT(r.violations.back().x, 1.0 / 9 - 1e-3);
}

TEST(Shrc, FiniteDifferencePathAgreesWithClosedForm) {
  const Cdf ref = make_cdf(Beta{0.5, 1});
  const Cdf no_slope(ref.support(), [ref](double x) { return ref(x); }, [ref](double x) { return ref.density(x); });
  const auto a = check_shrc(ref);
  const auto b = check_shrc(no_slope);
  ASSERT_FALSE(b.holds);
  EXPECT_NEAR(a.violations.back().x, b.violations.back().x, 2e-3);
  EXPECT_TRUE(check_shrc(Cdf({0, 1}, [](double x) { return x * x; }, [](double x) { return 2 * x; })).holds);
}

TEST(Shrc, ZeroDensityIsReported) {
  const Cdf f(
      {0, 1}, [](double x) { return x < 0.4 ? 1.25 * x : (x < 0.6 ? 0.5 : 0.5 + 1.25 * (x - 0.6)); },
      [](double x) { return x < 0.4 ? 1.25 : (x < 0.6 ? 0.0 : 1.25); }, {0.4, 0.6});
  EXPECT_THROW(check_shrc(f), ZeroDensityError);
}
