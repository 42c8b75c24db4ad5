#pragma once

// Scenario files: `key = value` lines, `#` starts a comment.
//
//   dist     = triangular(0,1,0.5)
//   eps      = 0.2
//   mode     = iid            # iid | correlated | interval
//   utility  = cara
//   rho      = 2
//   a        = 0.2            # interval mode only
//   b        = 0.7
//   grid     = 101
//   tol      = 1e-10
//   quad_tol = 1e-8
//   delta    = 1e-6

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tso/band.hpp"
#include "tso/dist.hpp"
#include "tso/error.hpp"
#include "tso/payoff.hpp"
#include "tso/solver.hpp"
#include "tso/welfare.hpp"

namespace tso::cli {

enum class Mode { iid, correlated, interval };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::iid:
      return "iid";
    case Mode::correlated:
      return "correlated";
    case Mode::interval:
      return "interval";
  }
  return "?";
}

struct Scenario {
  DistFamily dist = Uniform{};
  double eps = 0.0;
  Mode mode = Mode::iid;
  Utility utility;
  std::optional<double> a;
  std::optional<double> b;
  std::size_t grid_n = 101;
  double tol = kDefaultTol;
  double quad_tol = kDefaultQuadTol;
  double delta = kDefaultDelta;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t i = 0, j = s.size();
  while (i < j && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
  return std::string(s.substr(i, j - i));
}

inline double parse_double(std::string_view text, std::size_t line, const std::string& field) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(line, field, "expected a finite number, got '" + t + "'");
  }
  return v;
}

inline std::size_t parse_count(std::string_view text, std::size_t line, const std::string& field) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(line, field, "expected a nonnegative integer, got '" + t + "'");
  }
  return v;
}

inline DistFamily parse_dist(const std::string& text, std::size_t line) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != text.size()) {
    throw ConfigError(line, "dist", "expected name(arg,...), got '" + text + "'");
  }
  const std::string name = trim(text.substr(0, open));
  std::vector<double> args;
  std::stringstream ss(text.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(ss, item, ',')) args.push_back(parse_double(item, line, "dist"));

  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw ConfigError(line, "dist", name + " takes " + std::to_string(k) + " arguments");
    }
  };
  DistFamily fam;
  if (name == "uniform") {
    need(2);
    fam = Uniform{args[0], args[1]};
  } else if (name == "triangular") {
    need(3);
    fam = Triangular{args[0], args[1], args[2]};
  } else if (name == "truncnormal") {
    need(4);
    fam = TruncNormal{args[0], args[1], args[2], args[3]};
  } else if (name == "beta") {
    need(2);
    fam = Beta{args[0], args[1]};
  } else {
    throw ConfigError(line, "dist", "unknown family '" + name + "'");
  }
  try {
    (void)make_cdf(fam);
  } catch (const InvalidParameter& e) {
    throw ConfigError(line, "dist", e.what());
  }
  return fam;
}

}  // namespace detail

inline Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::optional<double> rho;
  std::size_t utility_line = 0;
  bool cara = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
    const std::string key = detail::trim(body.substr(0, eq));
    const std::string val = detail::trim(body.substr(eq + 1));
    if (key == "dist") {
      sc.dist = detail::parse_dist(val, line);
    } else if (key == "eps") {
      sc.eps = detail::parse_double(val, line, key);
      if (sc.eps < 0.0) throw ConfigError(line, key, "must be >= 0");
    } else if (key == "mode") {
      if (val == "iid") {
        sc.mode = Mode::iid;
      } else if (val == "correlated") {
        sc.mode = Mode::correlated;
      } else if (val == "interval") {
        sc.mode = Mode::interval;
      } else {
        throw ConfigError(line, key, "expected iid, correlated or interval, got '" + val + "'");
      }
    } else if (key == "utility") {
      utility_line = line;
      if (val == "identity") {
        cara = false;
      } else if (val == "cara") {
        cara = true;
      } else {
        throw ConfigError(line, key, "expected identity or cara, got '" + val + "'");
      }
    } else if (key == "rho") {
      rho = detail::parse_double(val, line, key);
    } else if (key == "a") {
      sc.a = detail::parse_double(val, line, key);
    } else if (key == "b") {
      sc.b = detail::parse_double(val, line, key);
    } else if (key == "grid") {
      sc.grid_n = detail::parse_count(val, line, key);
      if (sc.grid_n < 2) throw ConfigError(line, key, "must be >= 2");
    } else if (key == "tol") {
      sc.tol = detail::parse_double(val, line, key);
      if (!(sc.tol > 0.0)) throw ConfigError(line, key, "must be > 0");
    } else if (key == "quad_tol") {
      sc.quad_tol = detail::parse_double(val, line, key);
      if (!(sc.quad_tol > 0.0)) throw ConfigError(line, key, "must be > 0");
    } else if (key == "delta") {
      sc.delta = detail::parse_double(val, line, key);
      if (!(sc.delta > 0.0)) throw ConfigError(line, key, "must be > 0");
    } else {
      throw ConfigError(line, key, "unknown key");
    }
  }
  if (cara) {
    if (!rho) throw ConfigError(utility_line, "rho", "cara utility requires rho");
    try {
      sc.utility = Utility::cara(*rho);
    } catch (const InvalidParameter& e) {
      throw ConfigError(utility_line, "rho", e.what());
    }
  }
  if (sc.mode == Mode::interval) {
    if (!sc.a || !sc.b) throw ConfigError(line, sc.a ? "b" : "a", "interval mode requires a and b");
    if (*sc.a > *sc.b) throw ConfigError(line, "a", "interval mode requires a <= b");
    const Interval sup = make_cdf(sc.dist).support();
    if (!sup.contains(*sc.a) || !sup.contains(*sc.b)) {
      throw ConfigError(line, "a", "a and b must lie in the support of dist");
    }
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open scenario");
  return parse_scenario(in);
}

inline Scenario parse_scenario_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

}  // namespace tso::cli
