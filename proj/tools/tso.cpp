// tso: prices, welfare curves and efficiency maps for the Texas Shoot-Out
// under distribution-band uncertainty.
//
// Exit codes: 0 ok, 1 failed checks, 2 config or usage error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tso/cli/commands.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kChecksFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct Options {
  std::string config;
  std::string out;
  std::string in;
  std::optional<double> x;
  std::optional<double> eps;
  std::optional<std::size_t> grid;
  std::optional<double> delta;
};

tso::cli::Scenario load(const Options& o) {
  tso::cli::Scenario sc;
  if (!o.config.empty()) sc = tso::cli::load_scenario(o.config);
  if (o.eps) {
    if (*o.eps < 0.0) throw tso::ConfigError(0, "eps", "must be >= 0");
    sc.eps = *o.eps;
  }
  if (o.grid) {
    if (*o.grid < 2) throw tso::ConfigError(0, "grid", "must be >= 2");
    sc.grid_n = *o.grid;
  }
  if (o.delta) {
    if (!(*o.delta > 0.0)) throw tso::ConfigError(0, "delta", "must be > 0");
    sc.delta = *o.delta;
  }
  return sc;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw tso::IoError(o.out, "cannot open output");
  f << text;
  f.close();
  if (!f) throw tso::IoError(o.out, "write failed");
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw tso::IoError(path, "cannot open input");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "scenario file (key = value lines)");
  cmd->add_option("--eps", o.eps, "override band width eps");
  cmd->add_option("--grid", o.grid, "override grid size");
  cmd->add_option("--delta", o.delta, "override approx-sup undercut");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Texas Shoot-Out pricing under distribution bands"};
  app.require_subcommand(1);
  Options o;

  auto* price = app.add_subcommand("price", "optimal announcement at one valuation");
  add_common(price, o);
  price->add_option("--x", o.x, "divider valuation")->required();

  auto* sweep = app.add_subcommand("sweep", "price policy CSV: x,price,regime");
  auto* welfare = app.add_subcommand("welfare", "interim utilities CSV: x,phi_d,phi_c");
  auto* efficiency = app.add_subcommand("efficiency", "misallocation CSV: x_d,bad_lo,bad_hi");
  for (auto* c : {sweep, welfare, efficiency}) {
    add_common(c, o);
    c->add_option("--out", o.out, "output path (stdout if omitted)");
  }

  auto* check = app.add_subcommand("check", "SHRC, quasiconcavity and oracle report");
  add_common(check, o);

  auto* plot = app.add_subcommand("plot", "SVG from a sweep or welfare CSV");
  plot->add_option("--in", o.in, "input CSV")->required();
  plot->add_option("--out", o.out, "output SVG (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (price->parsed()) {
      std::cout << tso::cli::cmd_price(load(o), *o.x);
    } else if (sweep->parsed()) {
      emit(o, tso::cli::cmd_sweep(load(o)));
    } else if (welfare->parsed()) {
      emit(o, tso::cli::cmd_welfare(load(o)));
    } else if (efficiency->parsed()) {
      emit(o, tso::cli::cmd_efficiency(load(o)));
    } else if (check->parsed()) {
      return tso::cli::cmd_check(load(o), std::cout) ? kOk : kChecksFailed;
    } else if (plot->parsed()) {
      emit(o, tso::cli::cmd_plot(slurp(o.in)));
    }
  } catch (const tso::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const tso::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
