#pragma once

// Cumulative distribution functions on a compact valuation interval, the
// built-in parametric families, median brackets and the hazard-rate check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "tso/error.hpp"
#include "tso/interval.hpp"

namespace tso {

/// Point mass of a distribution.
struct Atom {
  double at = 0.0;
  double mass = 0.0;
};

/// A right-continuous CDF supported on [x_l, x_h].
///
/// `eval` is the distribution function itself (jumps included), `density` the
/// derivative of its absolutely continuous part. Atoms are listed explicitly so
/// that left limits are exact: left_limit(x) = eval(x) - mass at x. The
/// optional `density_slope` is f'(x) where a closed form is known; it lets the
/// hazard-rate check avoid finite differences.
///
/// Instances are immutable and cheap to copy.
class Cdf {
 public:
  using Fn = std::function<double(double)>;

  Cdf(Interval support, Fn eval, Fn density, std::vector<double> kinks = {},
      std::vector<Atom> atoms = {}, Fn density_slope = {}) {
    if (!(support.lo <= support.hi)) throw InvalidParameter("support must satisfy x_l <= x_h");
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
    std::erase_if(kinks, [&](double v) { return !support.contains(v); });
    std::erase_if(atoms, [](const Atom& a) { return !(a.mass > 0.0); });
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.at < b.at; });
    rep_ = std::make_shared<const Rep>(Rep{support, std::move(eval), std::move(density),
                                           std::move(density_slope), std::move(kinks), std::move(atoms)});
  }

  const Interval& support() const { return rep_->support; }

  double operator()(double x) const {
    if (x < rep_->support.lo) return 0.0;
    if (x >= rep_->support.hi) return 1.0;
    return std::clamp(rep_->eval(x), 0.0, 1.0);
  }
  double eval(double x) const { return (*this)(x); }

  double atom_mass(double x) const {
    double m = 0.0;
    for (const auto& a : rep_->atoms) {
      if (a.at == x) m += a.mass;
    }
    return m;
  }

  double left_limit(double x) const { return std::max(0.0, eval(x) - atom_mass(x)); }

  double density(double x) const {
    if (x < rep_->support.lo || x > rep_->support.hi) return 0.0;
    return std::max(0.0, rep_->density(x));
  }

  bool has_density_slope() const { return static_cast<bool>(rep_->density_slope); }
  std::optional<double> density_slope(double x) const {
    if (!rep_->density_slope) return std::nullopt;
    return rep_->density_slope(x);
  }

  std::span<const double> kinks() const { return rep_->kinks; }
  std::span<const Atom> atoms() const { return rep_->atoms; }

 private:
  struct Rep {
    Interval support;
    Fn eval;
    Fn density;
    Fn density_slope;
    std::vector<double> kinks;
    std::vector<Atom> atoms;
  };
  std::shared_ptr<const Rep> rep_;
};

// ---------------------------------------------------------------------------
// Parametric families

struct Uniform {
  double a = 0.0;
  double b = 1.0;
};
struct Triangular {
  double a = 0.0;
  double b = 1.0;
  double c = 0.5;
};
struct TruncNormal {
  double lo = 0.0;
  double hi = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
};
/// Beta(alpha, beta) on [0, 1].
struct Beta {
  double alpha = 1.0;
  double beta = 1.0;
};

using DistFamily = std::variant<Uniform, Triangular, TruncNormal, Beta>;

namespace detail {

inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
inline double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline Cdf make(const Uniform& d) {
  if (!(d.a < d.b)) throw InvalidParameter("uniform: requires a < b");
  const double w = d.b - d.a;
  return Cdf(
      {d.a, d.b}, [a = d.a, w](double x) { return (x - a) / w; },
      [w](double) { return 1.0 / w; }, {}, {}, [](double) { return 0.0; });
}

inline Cdf make(const Triangular& d) {
  if (!(d.a < d.b)) throw InvalidParameter("triangular: requires a < b");
  if (!(d.a <= d.c && d.c <= d.b)) throw InvalidParameter("triangular: requires a <= c <= b");
  const double a = d.a, b = d.b, c = d.c;
  const double left = (b - a) * (c - a);
  const double right = (b - a) * (b - c);
  auto eval = [=](double x) {
    if (x < c) return (x - a) * (x - a) / left;
    if (x == c) return (c - a) / (b - a);
    return 1.0 - (b - x) * (b - x) / right;
  };
  auto density = [=](double x) {
    if (x < c) return 2.0 * (x - a) / left;
    if (x > c) return 2.0 * (b - x) / right;
    return 2.0 / (b - a);
  };
  auto slope = [=](double x) {
    if (x < c) return 2.0 / left;
    if (x > c) return -2.0 / right;
    // at the mode pick the side that exists
    return left > 0.0 ? 2.0 / left : -2.0 / right;
  };
  std::vector<double> kinks;
  if (a < c && c < b) kinks.push_back(c);
  return Cdf({a, b}, eval, density, std::move(kinks), {}, slope);
}

inline Cdf make(const TruncNormal& d) {
  if (!(d.lo < d.hi)) throw InvalidParameter("truncnormal: requires lo < hi");
  if (!(d.sigma > 0.0)) throw InvalidParameter("truncnormal: requires sigma > 0");
  const double mu = d.mu, s = d.sigma;
  const double c0 = std_normal_cdf((d.lo - mu) / s);
  const double mass = std_normal_cdf((d.hi - mu) / s) - c0;
  if (!(mass > 0.0)) throw InvalidParameter("truncnormal: truncation window has zero mass");
  auto eval = [=](double x) { return (std_normal_cdf((x - mu) / s) - c0) / mass; };
  auto density = [=](double x) { return std_normal_pdf((x - mu) / s) / (s * mass); };
  auto slope = [=](double x) {
    const double z = (x - mu) / s;
    return -z / s * std_normal_pdf(z) / (s * mass);
  };
  return Cdf({d.lo, d.hi}, eval, density, {}, {}, slope);
}

inline Cdf make(const Beta& d) {
  if (!(d.alpha > 0.0)) throw InvalidParameter("beta: requires alpha > 0");
  if (!(d.beta > 0.0)) throw InvalidParameter("beta: requires beta > 0");
  const double al = d.alpha, be = d.beta;
  const double log_norm = std::lgamma(al) + std::lgamma(be) - std::lgamma(al + be);
  auto eval = [=](double x) { return boost::math::ibeta(al, be, x); };
  auto density = [=](double x) {
    if (x <= 0.0) return al < 1.0 ? HUGE_VAL : (al == 1.0 ? std::exp(-log_norm) : 0.0);
    if (x >= 1.0) return be < 1.0 ? HUGE_VAL : (be == 1.0 ? std::exp(-log_norm) : 0.0);
    return std::exp((al - 1.0) * std::log(x) + (be - 1.0) * std::log1p(-x) - log_norm);
  };
  auto slope = [=](double x) {
    const double f = std::exp((al - 1.0) * std::log(x) + (be - 1.0) * std::log1p(-x) - log_norm);
    return f * ((al - 1.0) / x - (be - 1.0) / (1.0 - x));
  };
  return Cdf({0.0, 1.0}, eval, density, {}, {}, slope);
}

}  // namespace detail

/// Builds the CDF of a parametric family; throws InvalidParameter naming the
/// violated constraint.
inline Cdf make_cdf(const DistFamily& family) {
  return std::visit([](const auto& d) { return detail::make(d); }, family);
}

/// Point mass at `at`, living on `support`.
inline Cdf make_dirac(double at, Interval support) {
  if (!support.contains(at)) throw InvalidParameter("dirac: location outside support");
  return Cdf(
      support, [at](double x) { return x >= at ? 1.0 : 0.0; }, [](double) { return 0.0; }, {at},
      {{at, 1.0}}, [](double) { return 0.0; });
}

inline std::string describe(const DistFamily& family) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  return std::visit(
      [&](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return "uniform(" + num(d.a) + "," + num(d.b) + ")";
        } else if constexpr (std::is_same_v<T, Triangular>) {
          return "triangular(" + num(d.a) + "," + num(d.b) + "," + num(d.c) + ")";
        } else if constexpr (std::is_same_v<T, TruncNormal>) {
          return "truncnormal(" + num(d.lo) + "," + num(d.hi) + "," + num(d.mu) + "," +
                 num(d.sigma) + ")";
        } else {
          return "beta(" + num(d.alpha) + "," + num(d.beta) + ")";
        }
      },
      family);
}

// ---------------------------------------------------------------------------
// Quantile-type searches

namespace detail {

/// Replaces x by a nearby kink or atom location. Bisection only reaches jump
/// points up to rounding; snapping makes brackets of discrete bounds exact.
inline double snap(const Cdf& cdf, double x) {
  const double eps = 1e-12 * std::max(1.0, cdf.support().width());
  for (const auto& a : cdf.atoms()) {
    if (std::abs(a.at - x) <= eps) return a.at;
  }
  for (double k : cdf.kinks()) {
    if (std::abs(k - x) <= eps) return k;
  }
  for (double e : {cdf.support().lo, cdf.support().hi}) {
    if (std::abs(e - x) <= eps) return e;
  }
  return x;
}

/// Boundary of a monotone predicate on [lo, hi]: pred(lo) true, pred(hi)
/// false. Returns (last true, first false) after bisection to adjacent doubles.
template <class Pred>
std::pair<double, double> bisect_predicate(Pred&& pred, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace detail

struct MedianBracket {
  double lower = 0.0;  ///< inf{x : F(x) >= 1/2}
  double upper = 0.0;  ///< sup{x : F(x-) <= 1/2}
};

/// Smallest and largest median of a possibly flat or discontinuous CDF.
inline MedianBracket median_bracket(const Cdf& cdf) {
  const auto [lo, hi] = cdf.support();
  MedianBracket mb;
  if (cdf(lo) >= 0.5) {
    mb.lower = lo;
  } else {
    mb.lower = detail::snap(cdf, detail::bisect_predicate([&](double x) { return cdf(x) < 0.5; }, lo, hi).second);
  }
  if (cdf.left_limit(hi) <= 0.5) {
    mb.upper = hi;
  } else {
    mb.upper = detail::snap(
        cdf, detail::bisect_predicate([&](double x) { return cdf.left_limit(x) <= 0.5; }, lo, hi).first);
  }
  // F(lower-) <= 1/2 always, so lower <= upper; the two bisections can
  // disagree by an ulp when F steps over 1/2 between adjacent doubles
  mb.upper = std::max(mb.upper, mb.lower);
  return mb;
}

/// sup{x in support : F(x) = 0}; the lower end of the support when F(x_l) > 0.
inline double zero_end(const Cdf& cdf) {
  const auto [lo, hi] = cdf.support();
  if (cdf(lo) > 0.0) return lo;
  return detail::snap(cdf, detail::bisect_predicate([&](double x) { return cdf(x) <= 0.0; }, lo, hi).first);
}

/// inf{x in support : F(x) = 1}.
inline double one_start(const Cdf& cdf) {
  const auto [lo, hi] = cdf.support();
  if (cdf(lo) >= 1.0) return lo;
  if (cdf.left_limit(hi) < 1.0) return hi;
  return detail::snap(cdf, detail::bisect_predicate([&](double x) { return cdf(x) < 1.0; }, lo, hi).second);
}

// ---------------------------------------------------------------------------
// Standard hazard rate conditions

struct ShrcViolation {
  double x = 0.0;
  double value = 0.0;
  int condition = 1;  ///< 1: d/dx(x + F/f), 2: d/dx(x - (1-F)/f)
};

struct ShrcReport {
  bool holds = true;
  std::vector<ShrcViolation> violations;
};

inline constexpr std::size_t kShrcDefaultGrid = 2001;

/// Checks monotonicity of x + F/f and x - (1-F)/f on `grid_n` interior points.
///
/// Uses the closed forms 2 - F f'/f^2 and 2 + (1-F) f'/f^2 when the CDF
/// provides f', central differences with h = 1e-5 * width otherwise. A value
/// below -1e-9 is a violation. Throws ZeroDensityError if f vanishes at a
/// sampled point.
inline ShrcReport check_shrc(const Cdf& cdf, std::size_t grid_n = kShrcDefaultGrid) {
  const auto [lo, hi] = cdf.support();
  const double w = hi - lo;
  const double h = 1e-5 * w;
  constexpr double kTol = -1e-9;

  auto hazard_lo = [&](double x) { return x + cdf(x) / cdf.density(x); };
  auto hazard_hi = [&](double x) { return x - (1.0 - cdf(x)) / cdf.density(x); };

  ShrcReport rep;
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double x = lo + w * static_cast<double>(i + 1) / static_cast<double>(grid_n + 1);
    const double f = cdf.density(x);
    if (!(f > 0.0)) throw ZeroDensityError(x);
    double d1 = 0.0, d2 = 0.0;
    if (auto fp = cdf.density_slope(x)) {
      const double F = cdf(x);
      d1 = 2.0 - F * *fp / (f * f);
      d2 = 2.0 + (1.0 - F) * *fp / (f * f);
    } else {
      const double xm = std::max(lo, x - h), xp = std::min(hi, x + h);
      if (!(cdf.density(xm) > 0.0)) throw ZeroDensityError(xm);
      if (!(cdf.density(xp) > 0.0)) throw ZeroDensityError(xp);
      d1 = (hazard_lo(xp) - hazard_lo(xm)) / (xp - xm);
      d2 = (hazard_hi(xp) - hazard_hi(xm)) / (xp - xm);
    }
    if (d1 < kTol) rep.violations.push_back({x, d1, 1});
    if (d2 < kTol) rep.violations.push_back({x, d2, 2});
  }
  rep.holds = rep.violations.empty();
  return rep;
}

}  // namespace tso
