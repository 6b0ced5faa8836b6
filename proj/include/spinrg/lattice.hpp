#pragma once

#include <utility>
#include <vector>

#include "spinrg/densemath.hpp"
#include "spinrg/states.hpp"

namespace spinrg::lattice {

enum class ModelKind { heisenberg, transverse_ising };
enum class Boundary { open, periodic };

// Dense-diagonalization ceiling: 2^14.
inline constexpr int kMaxSites = 14;

struct ModelSpec {
  ModelKind kind = ModelKind::heisenberg;
  int sites = 2;
  double coupling = 1.0;  // J
  double field = 0.0;     // h, transverse_ising only
  Boundary boundary = Boundary::open;

  void validate() const;
  long dim() const { return 1L << sites; }
};

// Pauli matrices with sz = diag(1, -1); basis ordering |0> = spin-up.
Matrix pauli(char axis);

/// sigma^axis embedded at `site` of an L-site chain: I (x) ... (x) sigma (x)
/// ... (x) I, with site 0 the most significant tensor factor.
struct SiteOperator {
  int site;
  char axis;
  Matrix matrix;
};

SiteOperator site_operator(int sites, int site, char axis);

std::vector<std::pair<int, int>> bonds(const ModelSpec& spec);

// heisenberg: (J/2) sum_bonds (sx sx + sy sy + sz sz)
// transverse_ising: -J sum_bonds sz sz - h sum_i sx
Matrix build_hamiltonian(const ModelSpec& spec);

// <s_i^a s_j^b> - <s_i^a><s_j^b>, i != j. States must be chains of qubits.
double connected_correlator(const states::PureState& psi, int i, char alpha,
                            int j, char beta);
double connected_correlator(const states::DensityMatrix& rho, int i, char alpha,
                            int j, char beta);

}  // namespace spinrg::lattice
