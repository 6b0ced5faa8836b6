#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spinrg/densemath.hpp"
#include "spinrg/lattice.hpp"
#include "spinrg/states.hpp"

namespace spinrg::renorm {

/// d x m matrix with orthonormal columns spanning the retained subspace W.
struct Isometry {
  Matrix columns;

  explicit Isometry(Matrix columns);  // validates orthonormality at 1e-9
  long d() const { return columns.rows(); }
  long m() const { return columns.cols(); }
  Matrix projector() const { return columns * columns.adjoint(); }
  static Isometry identity(long d);
};

struct OptimizerConfig {
  int restarts = 32;           // random restarts; one extra seeded restart on top
  bool seed_with_dmrg = true;
  std::uint64_t seed = 0;
  double improvement_tol = 1e-8;  // objective gain that counts as progress
  int stall_window = 50;          // stop after this many steps without progress
  int max_steps = 5000;           // per restart
  double fd_step = 1e-6;          // central-difference step
  double initial_step = 0.1;      // ascent step, adapted by backtracking
};

// || |psi> - (P (x) 1) |psi> ||^2 for P = W W^dag acting on the A factors.
double truncation_error(const Isometry& p, const states::PureState& psi,
                        const std::vector<int>& a_factors);

struct Projection {
  Isometry isometry;
  bool degenerate_cut;  // eigenvalue tie at the m-th kept weight
};

// Top-m eigenvectors of rho_A; minimizes truncation_error over all rank-m
// isometries (Ky Fan).
Projection dmrg_projection(const states::PureState& psi,
                           const std::vector<int>& a_factors, long m);
Projection dmrg_projection_mixed(const states::DensityMatrix& rho_ab,
                                 const std::vector<int>& a_factors, long m);

struct EmpPure {
  Isometry isometry;
  double achieved_entropy;  // bits, of P rho_A P / tr(P rho_A)
  bool degenerate;          // every restart hit tr(P rho_A) ~ 0
};

// Maximizes S(P rho_A P / tr(P rho_A)) over rank-m isometries on A by
// gradient ascent with QR retraction; best result over all restarts.
EmpPure emp_projection_pure(const states::PureState& psi,
                            const std::vector<int>& a_factors, long m,
                            const OptimizerConfig& opt);

struct EmpMixed {
  Isometry isometry_a;
  Isometry isometry_b;
  double achieved_eof;  // ebits, of the renormalized two-qubit state
  bool degenerate;
};

// Joint maximization of the entanglement of formation of
// (Pa (x) Pb) rho_AB (Pa (x) Pb) compressed to m_a * m_b = 4 dimensions.
EmpMixed emp_projection_mixed(const states::DensityMatrix& rho_ab,
                              const std::vector<int>& a_factors, long m_a,
                              long m_b, const OptimizerConfig& opt);

/// Block Hamiltonian plus the boundary-site Pauli operators needed to couple
/// one more site; everything lives in the current (possibly truncated) basis.
struct SpinBlock {
  int sites;
  Matrix hamiltonian;
  std::array<Matrix, 3> boundary;  // sx, sy, sz at the newest site
};

SpinBlock exact_block(const lattice::ModelSpec& spec, int sites);
// Appends one site with its couplings (and field, for transverse_ising).
SpinBlock grow_block(const SpinBlock& block, const lattice::ModelSpec& spec);
// O -> W^dag O W for every block operator.
SpinBlock conjugate_block(const SpinBlock& block, const Isometry& w);
// Superblock of a grown block with its mirror image, coupled boundary-to-boundary.
Matrix superblock_hamiltonian(const SpinBlock& block, const lattice::ModelSpec& spec);

struct RgIteration {
  int sites;
  long kept;              // block dimension after this iteration's truncation
  double energy;          // ground-energy estimate at this lattice size
  double energy_per_site;
  double boundary_sz;     // <sz> at the newest block site
  double delta;           // |energy_per_site - previous|
};

struct RgRunReport {
  std::vector<RgIteration> iterations;
  bool converged = false;
  const RgIteration& last() const { return iterations.back(); }
};

// Wilson RG: diagonalize the block, keep the m lowest eigenvectors, append a
// site, repeat until spec.sites, convergence, or the iteration cap.
RgRunReport wilson_run(const lattice::ModelSpec& spec, long m, int block_init,
                       int max_iters, double conv_threshold);

// Infinite-system DMRG: superblock = grown block + mirrored environment;
// truncation keeps the m dominant eigenvectors of the block reduced density
// matrix of the superblock ground state. Targets even spec.sites >= 4.
RgRunReport dmrg_run(const lattice::ModelSpec& spec, long m, int max_iters,
                     double conv_threshold);

}  // namespace spinrg::renorm
