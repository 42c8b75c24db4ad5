#pragma once

// CSV and SVG emitters. All numbers are printed with %.12g, so identical
// inputs give byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tso/error.hpp"
#include "tso/solver.hpp"
#include "tso/welfare.hpp"

namespace tso::cli {

inline std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // folds -0 into 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string price_line(double x, const Quote& q) {
  return "x=" + fmt(x) + " price=" + fmt(q.price) + " regime=" + std::string(to_string(q.regime));
}

inline std::string sweep_csv(const PricePolicy& policy) {
  std::string out = "x,price,regime\n";
  for (std::size_t i = 0; i < policy.size(); ++i) {
    out += fmt(policy.grid[i]) + "," + fmt(policy.prices[i]) + "," + std::string(to_string(policy.regimes[i])) +
           "\n";
  }
  return out;
}

inline std::string welfare_csv(const WelfareCurve& wc) {
  std::string out = "x,phi_d,phi_c\n";
  for (std::size_t i = 0; i < wc.grid.size(); ++i) {
    out += fmt(wc.grid[i]) + "," + fmt(wc.phi_d[i]) + "," + fmt(wc.phi_c[i]) + "\n";
  }
  if (wc.equality_band) {
    out += "# equality_band=" + fmt(wc.equality_band->lo) + "," + fmt(wc.equality_band->hi) + "\n";
  } else {
    out += "# equality_band=none\n";
  }
  return out;
}

inline std::string efficiency_csv(const PricePolicy& policy, std::size_t grid_n) {
  std::string out = "x_d,bad_lo,bad_hi\n";
  for (double x : policy.grid) {
    const auto r = efficiency_region(x, policy);
    out += fmt(x) + ",";
    if (r.bad_interval) out += fmt(r.bad_interval->lo) + "," + fmt(r.bad_interval->hi);
    else out += ",";
    out += "\n";
  }
  out += "# area=" + fmt(inefficiency_area(policy, grid_n)) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// SVG

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvTable read_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  bool have_header = false;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      t.header = split_csv_line(line);
      have_header = true;
    } else {
      t.rows.push_back(split_csv_line(line));
    }
  }
  return t;
}

namespace detail {

inline double parse_cell(const std::string& s, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw SchemaError("row " + std::to_string(row + 1) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace detail

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;

/// Plots a sweep (`x,price,regime`) or welfare (`x,phi_d,phi_c`) CSV.
/// Throws SchemaError for any other header.
inline std::string plot_svg(const std::string& csv_text) {
  const CsvTable t = read_csv(csv_text);
  const std::vector<std::string> sweep_h{"x", "price", "regime"};
  const std::vector<std::string> welfare_h{"x", "phi_d", "phi_c"};
  const bool is_sweep = t.header == sweep_h;
  if (!is_sweep && t.header != welfare_h) {
    std::string h;
    for (const auto& c : t.header) h += (h.empty() ? "" : ",") + c;
    throw SchemaError("unknown CSV header '" + h + "'");
  }

  std::vector<double> xs;
  std::vector<std::vector<double>> cols(is_sweep ? 1 : 2);
  std::vector<std::string> regimes;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (row.size() != 3) throw SchemaError("row " + std::to_string(r + 1) + ": expected 3 fields");
    xs.push_back(detail::parse_cell(row[0], r));
    cols[0].push_back(detail::parse_cell(row[1], r));
    if (is_sweep) {
      regimes.push_back(row[2]);
    } else {
      cols[1].push_back(detail::parse_cell(row[2], r));
    }
  }

  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 0.5;
  if (!xs.empty()) {
    x0 = *std::min_element(xs.begin(), xs.end());
    x1 = *std::max_element(xs.begin(), xs.end());
    if (!(x1 > x0)) x1 = x0 + 1.0;
    y0 = std::min(0.0, 0.5 * x0);
    y1 = std::max(0.5 * x1, 0.5 * x0);
    for (const auto& c : cols) {
      for (double v : c) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
    }
    if (!(y1 > y0)) y1 = y0 + 1.0;
  }

  constexpr double ml = 70, mr = 30, mt = 30, mb = 60;
  const double pw = kSvgWidth - ml - mr, ph = kSvgHeight - mt - mb;
  auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return mt + (y1 - y) / (y1 - y0) * ph; };
  auto num = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return std::string(b);
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  // axes
  s += "<g stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(ml + pw) + "\" y2=\"" + num(mt + ph) +
       "\"/>\n";
  s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" + num(mt + ph) + "\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    s += "<line x1=\"" + num(sx(xv)) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(sx(xv)) + "\" y2=\"" +
         num(mt + ph + 5) + "\"/>\n";
    s += "<text stroke=\"none\" x=\"" + num(sx(xv)) + "\" y=\"" + num(mt + ph + 20) +
         "\" text-anchor=\"middle\">" + fmt(xv) + "</text>\n";
    s += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(ml) + "\" y2=\"" +
         num(sy(yv)) + "\"/>\n";
    s += "<text stroke=\"none\" x=\"" + num(ml - 8) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" +
         fmt(yv) + "</text>\n";
  }
  s += "<text stroke=\"none\" x=\"" + num(ml + pw / 2) + "\" y=\"" + num(kSvgHeight - 15.0) +
       "\" text-anchor=\"middle\">" + t.header[0] + "</text>\n";
  s += "</g>\n";

  if (!xs.empty()) {
    s += "<line x1=\"" + num(sx(x0)) + "\" y1=\"" + num(sy(0.5 * x0)) + "\" x2=\"" + num(sx(x1)) + "\" y2=\"" +
         num(sy(0.5 * x1)) + "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    const char* colors[] = {"#1f4e9c", "#c0392b"};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      s += "<polyline fill=\"none\" stroke=\"" + std::string(colors[c]) + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? " " : "") + num(sx(xs[i])) + "," + num(sy(cols[c][i]));
      }
      s += "\"><title>" + t.header[c + 1] + "</title></polyline>\n";
    }
    for (std::size_t i = 1; i < regimes.size(); ++i) {
      if (regimes[i] != regimes[i - 1]) {
        s += "<circle cx=\"" + num(sx(xs[i])) + "\" cy=\"" + num(sy(cols[0][i])) +
             "\" r=\"4\" fill=\"none\" stroke=\"black\"><title>" + regimes[i] + "</title></circle>\n";
      }
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace tso::cli
