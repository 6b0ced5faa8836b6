#include "spinrg/expcli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spinrg/entangle.hpp"
#include "spinrg/states.hpp"

namespace spinrg::expcli {

namespace {

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fig1: return "fig1";
    case ExperimentKind::rg_compare: return "rg-compare";
    case ExperimentKind::correlator: return "correlator";
    case ExperimentKind::ground: return "ground";
  }
  return "?";
}

const char* model_name(lattice::ModelKind kind) {
  return kind == lattice::ModelKind::heisenberg ? "heisenberg" : "transverse_ising";
}

const char* boundary_name(lattice::Boundary b) {
  return b == lattice::Boundary::open ? "open" : "periodic";
}

std::vector<int> first_half(int sites) {
  std::vector<int> a;
  for (int f = 0; f < sites / 2; ++f) a.push_back(f);
  return a;
}

std::vector<int> second_half(int sites) {
  std::vector<int> b;
  for (int f = sites / 2; f < sites; ++f) b.push_back(f);
  return b;
}

// Renormalized two-qubit state (Wa (x) Wb)^dag rho (Wa (x) Wb), unit trace.
states::DensityMatrix project_pair(const Matrix& regrouped, const Matrix& wa,
                                   const Matrix& wb) {
  const Matrix k = densemath::kron(wa, wb);
  Matrix out = k.adjoint() * regrouped * k;
  out /= out.trace().real();
  return states::DensityMatrix::trusted({2, 2}, std::move(out));
}

Fig1Row fig1_point(const Matrix& h, const RunConfig& cfg, double kt, int index) {
  const int sites = cfg.model.sites;
  const auto a_factors = first_half(sites);
  const auto b_factors = second_half(sites);
  const states::DensityMatrix rho =
      states::thermal_state(h, kt, states::qubit_dims(sites));
  const states::Split split = states::make_split(rho.dims, a_factors);
  const Matrix regrouped = states::regroup(rho, split);

  const renorm::Projection pa = renorm::dmrg_projection_mixed(rho, a_factors, 2);
  const renorm::Projection pb = renorm::dmrg_projection_mixed(rho, b_factors, 2);
  const double eof_dmrg = entangle::eof_two_qubits(
      project_pair(regrouped, pa.isometry.columns, pb.isometry.columns));

  renorm::OptimizerConfig opt = cfg.optimizer;
  opt.seed = cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1));
  const renorm::EmpMixed emp =
      renorm::emp_projection_mixed(rho, a_factors, 2, 2, opt);

  Fig1Row row;
  row.kt = kt;
  row.eof_dmrg = eof_dmrg;
  row.eof_emp = emp.achieved_eof;
  row.eof_lower_bound = entangle::eof_lower_bound(rho, a_factors);
  row.entropy_a = entangle::von_neumann_entropy(states::reduce(rho, a_factors));
  row.degenerate = pa.degenerate_cut || pb.degenerate_cut || emp.degenerate;
  return row;
}

int worker_count(const RunConfig& cfg, int jobs) {
  int n = cfg.threads > 0 ? cfg.threads
                          : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  return std::min(n, jobs);
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  if (kt_min < 0.0) throw std::invalid_argument("RunConfig: kt grid min must be >= 0");
  if (kt_steps < 1) throw std::invalid_argument("RunConfig: kt steps must be >= 1");
  if (kt_steps > 1 && kt_max < kt_min) {
    throw std::invalid_argument("RunConfig: kt max must be >= kt min");
  }
  if (m_values.empty()) throw std::invalid_argument("RunConfig: need at least one m");
  if (kind == ExperimentKind::fig1 && model.sites % 2 != 0) {
    throw std::invalid_argument("fig1: sites must be even");
  }
  if (base_site < 0 || base_site >= model.sites) {
    throw std::invalid_argument("RunConfig: base site out of range");
  }
  if (axes.size() != 2 || axes.find_first_not_of("xyz") != std::string::npos) {
    throw std::invalid_argument("RunConfig: axes must be two of x, y, z");
  }
}

std::vector<double> RunConfig::kt_grid() const {
  std::vector<double> grid;
  grid.reserve(kt_steps);
  if (kt_steps == 1) {
    grid.push_back(kt_min);
    return grid;
  }
  const double step = (kt_max - kt_min) / (kt_steps - 1);
  for (int k = 0; k < kt_steps; ++k) grid.push_back(kt_min + step * k);
  return grid;
}

std::vector<Fig1Row> run_fig1(const RunConfig& cfg) {
  cfg.validate();
  const Matrix h = lattice::build_hamiltonian(cfg.model);
  const std::vector<double> grid = cfg.kt_grid();
  std::vector<Fig1Row> rows(grid.size());

  std::atomic<size_t> next{0};
  const auto work = [&]() {
    for (size_t k = next.fetch_add(1); k < grid.size(); k = next.fetch_add(1)) {
      rows[k] = fig1_point(h, cfg, grid[k], static_cast<int>(k));
    }
  };
  std::vector<std::thread> pool;
  const int workers = worker_count(cfg, static_cast<int>(grid.size()));
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return rows;
}

RgCompareReport run_rg_compare(const RunConfig& cfg) {
  cfg.validate();
  const Matrix h = lattice::build_hamiltonian(cfg.model);
  RgCompareReport report;
  report.exact_energy = densemath::hermitian_eig(h).values[0];
  for (long m : cfg.m_values) {
    const renorm::RgRunReport wilson =
        renorm::wilson_run(cfg.model, m, cfg.block_init, cfg.model.sites, 0.0);
    const renorm::RgRunReport dmrg =
        renorm::dmrg_run(cfg.model, m, cfg.model.sites, 0.0);
    RgCompareRow row;
    row.m = m;
    row.wilson_energy = wilson.last().energy;
    row.dmrg_energy = dmrg.last().energy;
    row.wilson_error = std::abs(row.wilson_energy - report.exact_energy);
    row.dmrg_error = std::abs(row.dmrg_energy - report.exact_energy);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<CorrelatorRow> run_correlator(const RunConfig& cfg) {
  cfg.validate();
  const Matrix h = lattice::build_hamiltonian(cfg.model);
  const auto dims = states::qubit_dims(cfg.model.sites);
  std::vector<CorrelatorRow> rows;
  const char alpha = cfg.axes[0];
  const char beta = cfg.axes[1];
  if (cfg.kt_min > 0.0) {
    const states::DensityMatrix rho = states::thermal_state(h, cfg.kt_min, dims);
    for (int j = cfg.base_site + 1; j < cfg.model.sites; ++j) {
      rows.push_back({j - cfg.base_site,
                      lattice::connected_correlator(rho, cfg.base_site, alpha, j, beta)});
    }
  } else {
    const states::GroundResult gs = states::ground_state(h, dims);
    for (int j = cfg.base_site + 1; j < cfg.model.sites; ++j) {
      rows.push_back({j - cfg.base_site,
                      lattice::connected_correlator(gs.state, cfg.base_site, alpha, j, beta)});
    }
  }
  return rows;
}

GroundReport run_ground(const RunConfig& cfg) {
  cfg.validate();
  const Matrix h = lattice::build_hamiltonian(cfg.model);
  const states::GroundResult gs =
      states::ground_state(h, states::qubit_dims(cfg.model.sites));
  GroundReport report;
  report.energy = gs.energy;
  report.energy_per_site = gs.energy / cfg.model.sites;
  report.gap = gs.gap;
  report.degenerate = gs.degenerate;
  report.half_block_entropy =
      cfg.model.sites >= 2
          ? entangle::von_neumann_entropy(
                states::reduce(gs.state, first_half(cfg.model.sites)))
          : 0.0;
  return report;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string metadata_lines(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# spinrg " << kind_name(cfg.kind) << "\n";
  out << "# model=" << model_name(cfg.model.kind) << " sites=" << cfg.model.sites
      << " coupling=" << format_number(cfg.model.coupling)
      << " field=" << format_number(cfg.model.field)
      << " boundary=" << boundary_name(cfg.model.boundary) << "\n";
  out << "# seed=" << cfg.seed << " restarts=" << cfg.optimizer.restarts
      << " dmrg_seeded=" << (cfg.optimizer.seed_with_dmrg ? 1 : 0)
      << " improvement_tol=" << format_number(cfg.optimizer.improvement_tol)
      << " stall_window=" << cfg.optimizer.stall_window
      << " max_steps=" << cfg.optimizer.max_steps
      << " fd_step=" << format_number(cfg.optimizer.fd_step)
      << " initial_step=" << format_number(cfg.optimizer.initial_step) << "\n";
  return out.str();
}

std::string fig1_csv(const RunConfig& cfg, const std::vector<Fig1Row>& rows) {
  std::ostringstream out;
  out << metadata_lines(cfg);
  out << "kT,eof_dmrg,eof_emp,eof_lower_bound,entropy_A,degenerate\n";
  for (const Fig1Row& row : rows) {
    out << format_number(row.kt) << ',' << format_number(row.eof_dmrg) << ','
        << format_number(row.eof_emp) << ',' << format_number(row.eof_lower_bound)
        << ',' << format_number(row.entropy_a) << ',' << (row.degenerate ? 1 : 0)
        << "\n";
  }
  return out.str();
}

std::vector<Fig1Row> parse_fig1_csv(const std::string& text) {
  std::vector<Fig1Row> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // header row
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> values;
    while (std::getline(fields, field, ',')) values.push_back(field);
    if (values.size() != 6) {
      throw std::invalid_argument("parse_fig1_csv: malformed row: " + line);
    }
    Fig1Row row;
    row.kt = std::stod(values[0]);
    row.eof_dmrg = std::stod(values[1]);
    row.eof_emp = std::stod(values[2]);
    row.eof_lower_bound = std::stod(values[3]);
    row.entropy_a = std::stod(values[4]);
    row.degenerate = values[5] == "1";
    rows.push_back(row);
  }
  return rows;
}

std::string rg_compare_csv(const RunConfig& cfg, const RgCompareReport& report) {
  std::ostringstream out;
  out << metadata_lines(cfg);
  out << "# exact_energy=" << format_number(report.exact_energy) << "\n";
  out << "m,wilson_energy,dmrg_energy,wilson_error,dmrg_error\n";
  for (const RgCompareRow& row : report.rows) {
    out << row.m << ',' << format_number(row.wilson_energy) << ','
        << format_number(row.dmrg_energy) << ',' << format_number(row.wilson_error)
        << ',' << format_number(row.dmrg_error) << "\n";
  }
  return out.str();
}

std::string correlator_csv(const RunConfig& cfg, const std::vector<CorrelatorRow>& rows) {
  std::ostringstream out;
  out << metadata_lines(cfg);
  out << "# base_site=" << cfg.base_site << " axes=" << cfg.axes
      << " kt=" << format_number(cfg.kt_min) << "\n";
  out << "separation,value\n";
  for (const CorrelatorRow& row : rows) {
    out << row.separation << ',' << format_number(row.value) << "\n";
  }
  return out.str();
}

std::string ground_csv(const RunConfig& cfg, const GroundReport& report) {
  std::ostringstream out;
  out << metadata_lines(cfg);
  out << "energy,energy_per_site,gap,degenerate,half_block_entropy\n";
  out << format_number(report.energy) << ',' << format_number(report.energy_per_site)
      << ',' << format_number(report.gap) << ',' << (report.degenerate ? 1 : 0)
      << ',' << format_number(report.half_block_entropy) << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << bytes;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string run_to_csv(const RunConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::fig1:
      return fig1_csv(cfg, run_fig1(cfg));
    case ExperimentKind::rg_compare:
      return rg_compare_csv(cfg, run_rg_compare(cfg));
    case ExperimentKind::correlator:
      return correlator_csv(cfg, run_correlator(cfg));
    case ExperimentKind::ground:
      return ground_csv(cfg, run_ground(cfg));
  }
  throw std::logic_error("run_to_csv: unknown experiment kind");
}

}  // namespace spinrg::expcli
