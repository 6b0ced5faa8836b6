#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinrg/lattice.hpp"
#include "spinrg/renorm.hpp"

namespace spinrg::expcli {

enum class ExperimentKind { fig1, rg_compare, correlator, ground };

struct RunConfig {
  ExperimentKind kind = ExperimentKind::fig1;
  lattice::ModelSpec model;
  double kt_min = 0.05;
  double kt_max = 3.0;
  int kt_steps = 60;
  std::vector<long> m_values = {8};
  renorm::OptimizerConfig optimizer;
  std::uint64_t seed = 12345;
  std::string out_path;  // empty = stdout
  int base_site = 0;     // correlator reference site
  std::string axes = "zz";
  int block_init = 2;    // wilson starting block
  int threads = 0;       // 0 = hardware concurrency

  void validate() const;
  std::vector<double> kt_grid() const;
};

struct Fig1Row {
  double kt;
  double eof_dmrg;         // ebits
  double eof_emp;          // ebits
  double eof_lower_bound;  // ebits
  double entropy_a;        // bits
  bool degenerate;
};

// Thermal superblock at each kT; block A renormalized to one qubit by the
// DMRG rule and by the entanglement-maximization search (same for B); the
// entanglement of formation of the renormalized pair goes in the row.
// Grid points run in parallel; rows come back in grid order.
std::vector<Fig1Row> run_fig1(const RunConfig& cfg);

struct RgCompareRow {
  long m;
  double wilson_energy;
  double dmrg_energy;
  double wilson_error;
  double dmrg_error;
};

struct RgCompareReport {
  double exact_energy;
  std::vector<RgCompareRow> rows;
};

RgCompareReport run_rg_compare(const RunConfig& cfg);

struct CorrelatorRow {
  int separation;
  double value;
};

// Connected correlators from cfg.base_site at every separation; ground state
// by default, thermal state when kt_min > 0.
std::vector<CorrelatorRow> run_correlator(const RunConfig& cfg);

struct GroundReport {
  double energy;
  double energy_per_site;
  double gap;
  bool degenerate;
  double half_block_entropy;  // bits, first-half bipartition
};

GroundReport run_ground(const RunConfig& cfg);

// CSV output: '#' metadata lines, then the header row, then data rows.
// Numbers carry 12 significant digits.
std::string format_number(double x);
std::string metadata_lines(const RunConfig& cfg);
std::string fig1_csv(const RunConfig& cfg, const std::vector<Fig1Row>& rows);
std::vector<Fig1Row> parse_fig1_csv(const std::string& text);
std::string rg_compare_csv(const RunConfig& cfg, const RgCompareReport& report);
std::string correlator_csv(const RunConfig& cfg, const std::vector<CorrelatorRow>& rows);
std::string ground_csv(const RunConfig& cfg, const GroundReport& report);

void write_file(const std::string& path, const std::string& bytes);
std::string run_to_csv(const RunConfig& cfg);  // dispatch on cfg.kind

}  // namespace spinrg::expcli
