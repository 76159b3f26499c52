// Command-line front end: SCFP tables, block dumps, fixed-point solvers and
// density sweeps, all emitted as flat CSV files.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "angulon/config.hpp"
#include "angulon/hamiltonian.hpp"
#include "angulon/model.hpp"
#include "angulon/scfp.hpp"
#include "angulon/spectrum.hpp"

namespace {

using angulon::config::Config;
using angulon::config::fmt15;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

const std::set<std::string>& allowed_keys() {
  static const std::set<std::string> keys = {
      "c",           "m_b",           "g_bb",          "n0_log10",
      "n0_log10_min", "n0_log10_max", "n0_log10_steps", "u0",
      "u1",          "r0",            "r1",            "grid.kmin",
      "grid.kmax",   "grid.points",   "grid.spacing"};
  return keys;
}

Config load_config(const std::string& path) {
  Config cfg = path.empty() ? Config() : Config::parse_file(path);
  const auto bad = cfg.unknown_keys(allowed_keys());
  if (!bad.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto& k : bad) msg += " " + k;
    throw CLI::ValidationError(msg);
  }
  return cfg;
}

angulon::model::KGrid grid_from(const Config& cfg) {
  const double kmin = cfg.get_double("grid.kmin", 1e-3);
  const double kmax = cfg.get_double("grid.kmax", 60.0);
  const int points = cfg.get_int("grid.points", 2000);
  const std::string spacing = cfg.get_string("grid.spacing", "geometric");
  if (spacing == "geometric")
    return angulon::model::KGrid::geometric(kmin, kmax, points);
  if (spacing == "linear") return angulon::model::KGrid::linear(kmin, kmax, points);
  throw CLI::ValidationError("grid.spacing must be 'geometric' or 'linear'");
}

angulon::model::BogoliubovParams params_from(const Config& cfg, double n0_log10) {
  angulon::model::BogoliubovParams p;
  p.c = cfg.get_double("c", 1.0);
  p.boson_mass = cfg.get_double("m_b", 1.0);
  p.g_bb = cfg.get_double("g_bb", 400.0);
  p.u = {cfg.get_double("u0", 1.75), cfg.get_double("u1", 5.0)};
  p.r = {cfg.get_double("r0", 1.5), cfg.get_double("r1", 1.5)};
  p.n0 = std::pow(10.0, n0_log10);
  return p;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  return f;
}

int cmd_scfp(int lam, int n_max, const std::string& out) {
  const auto table = angulon::scfp::oracle(lam, n_max);
  if (!out.empty()) {
    auto f = open_out(out);
    table.write_csv(f);
  } else {
    table.write_csv(std::cout);
  }
  const std::string report = angulon::scfp::comparison_report(table);
  std::cout << report;
  if (!out.empty()) {
    auto f = open_out(out + ".report");
    f << report;
  }
  return kExitOk;
}

int cmd_model_dump(const Config& cfg, const std::string& out) {
  const auto grid = grid_from(cfg);
  const auto m =
      angulon::model::helium_model(params_from(cfg, cfg.get_double("n0_log10", 0.0)));
  auto f = open_out(out.empty() ? "model.csv" : out);
  f << "k,omega,U_0,U_1\n";
  for (double k : grid.points)
    f << fmt15(k) << ',' << fmt15(m.omega(k)) << ',' << fmt15(m.u(0, k)) << ','
      << fmt15(m.u(1, k)) << '\n';
  const auto rep = angulon::model::audit(m, grid);
  std::cout << "max omega = " << fmt15(rep.max_omega)
            << ", max coupling sum = " << fmt15(rep.max_coupling_sum)
            << (rep.bounded ? " (bounded)" : " (NOT bounded)") << "\n";
  return kExitOk;
}

int cmd_block(const Config& cfg, int L, int N, int lam_max, double k,
              const std::string& out) {
  const auto m =
      angulon::model::helium_model(params_from(cfg, cfg.get_double("n0_log10", 0.0)));
  angulon::ham::Truncation t;
  t.n_max = N;
  t.lam_max = lam_max;
  const auto block = angulon::ham::assemble_block(L, k, m, t);
  const std::string base = out.empty() ? "block.csv" : out;
  {
    auto f = open_out(base + ".channels");
    f << "index,label\n";
    for (std::size_t i = 0; i < block.channels.size(); ++i)
      f << i << ',' << block.channels[i].render() << '\n';
  }
  auto f = open_out(base);
  f << "row_label,col_label,value\n";
  const int dim = static_cast<int>(block.channels.size());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      f << block.channels[i].render() << ';' << block.channels[j].render() << ';'
        << fmt15(block.entries(i, j)) << '\n';
  return kExitOk;
}

int cmd_solve(const Config& cfg, int L, int N, const std::string& out) {
  const auto grid = grid_from(cfg);
  const auto m =
      angulon::model::helium_model(params_from(cfg, cfg.get_double("n0_log10", 0.0)));
  const auto mu = angulon::model::measure_from_density(grid, [](double) { return 1.0; });
  angulon::spectrum::FixedPointSolution sol;
  if (N == 1) {
    sol = angulon::spectrum::solve_n1(L, m, mu);
  } else if (N == 2 && L == 0) {
    const auto table = angulon::ham::scfp_for_model(m.lam_max, 2);
    sol = angulon::spectrum::solve_n2_l0(m, mu, table);
  } else {
    throw CLI::ValidationError("closed-form solvers cover N=1 (any L) and N=2, L=0");
  }
  std::cout << "E/c = " << fmt15(sol.energy / m.c) << " (residual "
            << fmt15(sol.residual) << ", " << (sol.bound ? "bound" : "free") << ")\n";
  if (!out.empty()) {
    auto f = open_out(out);
    f << "k";
    for (const auto& ch : sol.channels) f << ',' << ch.render();
    f << '\n';
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
      f << fmt15(sol.grid.points[i]);
      for (double a : sol.coordinates[i]) f << ',' << fmt15(a);
      f << '\n';
    }
  }
  return kExitOk;
}

int cmd_sweep(const Config& cfg, const std::string& out) {
  const auto grid = grid_from(cfg);
  const double lo = cfg.get_double("n0_log10_min", -10.0);
  const double hi = cfg.get_double("n0_log10_max", 2.0);
  const int steps = cfg.get_int("n0_log10_steps", 25);
  if (steps < 1 || hi < lo) throw CLI::ValidationError("invalid density sweep range");
  std::vector<double> rho(steps);
  for (int i = 0; i < steps; ++i)
    rho[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0);
  const auto base = params_from(cfg, 0.0);
  const auto result = angulon::spectrum::sweep_density(base, rho, grid);

  auto f = open_out(out.empty() ? "sweep.csv" : out);
  f << "rho_tilde,energy_over_c,residual,n_poles,energy_n1_over_c,ok\n";
  std::size_t n_ok = 0;
  for (const auto& row : result.rows) {
    f << fmt15(row.rho_tilde) << ',' << fmt15(row.energy / base.c) << ','
      << fmt15(row.residual) << ',' << row.n_poles << ','
      << fmt15(row.energy_n1 / base.c) << ',' << (row.ok ? 1 : 0) << '\n';
    if (row.ok)
      ++n_ok;
    else
      std::cerr << "row rho_tilde=" << row.rho_tilde << " failed: " << row.message
                << "\n";
  }
  const double frac = result.rows.empty() ? 0.0 : double(n_ok) / result.rows.size();
  std::cout << n_ok << "/" << result.rows.size() << " rows solved\n";
  return frac >= 0.9 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"angulon: phonon-dressed rotor spectra on a k-grid"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  int L = 0;
  int N = 1;
  int lam_max = 1;
  int lam = 1;
  double k = 1.0;

  auto* scfp_cmd = app.add_subcommand("scfp", "compute an SCFP table");
  scfp_cmd->add_option("--lambda", lam, "phonon angular momentum")->required();
  scfp_cmd->add_option("--n", N, "largest particle number")->default_val(3);
  scfp_cmd->add_option("--out", out, "CSV output path");

  auto* block_cmd = app.add_subcommand("block", "dump one (L, k) block");
  block_cmd->add_option("--config", config_path, "model config file");
  block_cmd->add_option("--L", L, "total angular momentum");
  block_cmd->add_option("--n", N, "phonon-number truncation")->default_val(1);
  block_cmd->add_option("--lmax", lam_max, "largest phonon momentum")->default_val(1);
  block_cmd->add_option("--k", k, "wavenumber")->required();
  block_cmd->add_option("--out", out, "CSV output path");

  auto* solve_cmd = app.add_subcommand("solve", "solve the fixed-point equation");
  solve_cmd->add_option("--config", config_path, "model config file");
  solve_cmd->add_option("--L", L, "total angular momentum");
  solve_cmd->add_option("--n", N, "phonon-number truncation (1 or 2)")->default_val(2);
  solve_cmd->add_option("--out", out, "coordinates CSV path");

  auto* sweep_cmd = app.add_subcommand("sweep", "energy vs logarithmic density");
  sweep_cmd->add_option("--config", config_path, "model config file");
  sweep_cmd->add_option("--out", out, "CSV output path");

  auto* dump_cmd = app.add_subcommand("model-dump", "dump model curves");
  dump_cmd->add_option("--config", config_path, "model config file");
  dump_cmd->add_option("--out", out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Config cfg = load_config(config_path);
    if (scfp_cmd->parsed()) return cmd_scfp(lam, N, out);
    if (block_cmd->parsed()) return cmd_block(cfg, L, N, lam_max, k, out);
    if (solve_cmd->parsed()) return cmd_solve(cfg, L, N, out);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
    if (dump_cmd->parsed()) return cmd_model_dump(cfg, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
