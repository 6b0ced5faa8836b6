// spinrg command-line driver: fig1, rg-compare, correlator, ground.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "spinrg/expcli.hpp"

namespace {

using spinrg::expcli::ExperimentKind;
using spinrg::expcli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  const std::map<std::string, spinrg::lattice::ModelKind> models{
      {"heisenberg", spinrg::lattice::ModelKind::heisenberg},
      {"transverse_ising", spinrg::lattice::ModelKind::transverse_ising}};
  const std::map<std::string, spinrg::lattice::Boundary> boundaries{
      {"open", spinrg::lattice::Boundary::open},
      {"periodic", spinrg::lattice::Boundary::periodic}};

  cmd->add_option("--model", cfg.model.kind, "heisenberg | transverse_ising")
      ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
  cmd->add_option("--sites", cfg.model.sites, "chain length (2..14)");
  cmd->add_option("--coupling", cfg.model.coupling, "J");
  cmd->add_option("--field", cfg.model.field, "h (transverse_ising)");
  cmd->add_option("--boundary", cfg.model.boundary, "open | periodic")
      ->transform(CLI::CheckedTransformer(boundaries, CLI::ignore_case));
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  cmd->set_config("--config", "", "flat key=value config file; flags override");
}

int run(const RunConfig& cfg) {
  const std::string csv = spinrg::expcli::run_to_csv(cfg);
  if (cfg.out_path.empty()) {
    std::cout << csv;
  } else {
    spinrg::expcli::write_file(cfg.out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renormalization and entanglement experiments on spin-1/2 chains"};
  app.require_subcommand(1);

  RunConfig fig1;
  fig1.kind = ExperimentKind::fig1;
  fig1.model.sites = 4;
  CLI::App* fig1_cmd = app.add_subcommand(
      "fig1", "entanglement preserved by DMRG vs EMP renormalization over a kT grid");
  add_common_options(fig1_cmd, fig1);
  fig1_cmd->add_option("--kt-min", fig1.kt_min, "grid minimum (units of J)");
  fig1_cmd->add_option("--kt-max", fig1.kt_max, "grid maximum");
  fig1_cmd->add_option("--kt-steps", fig1.kt_steps, "grid points");
  fig1_cmd->add_option("--restarts", fig1.optimizer.restarts, "EMP random restarts");

  RunConfig rg;
  rg.kind = ExperimentKind::rg_compare;
  rg.model.sites = 10;
  CLI::App* rg_cmd = app.add_subcommand(
      "rg-compare", "Wilson RG vs DMRG ground-energy error against dense diagonalization");
  add_common_options(rg_cmd, rg);
  rg_cmd->add_option("--m", rg.m_values, "retained dimensions (comma separated)")
      ->delimiter(',');
  rg_cmd->add_option("--block-init", rg.block_init, "Wilson starting block size");

  RunConfig corr;
  corr.kind = ExperimentKind::correlator;
  corr.model.sites = 10;
  corr.kt_min = 0.0;
  CLI::App* corr_cmd = app.add_subcommand(
      "correlator", "connected spin-spin correlators vs separation");
  add_common_options(corr_cmd, corr);
  corr_cmd->add_option("--kt-min", corr.kt_min, "temperature; 0 = ground state");
  corr_cmd->add_option("--site", corr.base_site, "reference site");
  corr_cmd->add_option("--axes", corr.axes, "two of x, y, z (default zz)");

  RunConfig ground;
  ground.kind = ExperimentKind::ground;
  CLI::App* ground_cmd =
      app.add_subcommand("ground", "ground-state energy, gap, and block entropy");
  add_common_options(ground_cmd, ground);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fig1_cmd->parsed()) return run(fig1);
    if (rg_cmd->parsed()) return run(rg);
    if (corr_cmd->parsed()) return run(corr);
    return run(ground);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
