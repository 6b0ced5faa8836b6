#pragma once

#include <vector>

#include "spinrg/densemath.hpp"

namespace spinrg::states {

long product(const std::vector<long>& dims);
std::vector<long> qubit_dims(int n);

/// Normalized amplitude vector over a labeled tensor-product space.
/// Factor 0 is the most significant index.
struct PureState {
  std::vector<long> dims;
  Vector amplitudes;

  PureState(std::vector<long> dims, Vector amplitudes);
  long dim() const { return amplitudes.size(); }
  int factors() const { return static_cast<int>(dims.size()); }
};

/// Hermitian, positive-semidefinite, unit-trace operator over a labeled space.
struct DensityMatrix {
  std::vector<long> dims;
  Matrix rho;

  DensityMatrix(std::vector<long> dims, Matrix rho);
  long dim() const { return rho.rows(); }
  int factors() const { return static_cast<int>(dims.size()); }

  // Skips the spectral check; for results that are PSD by construction.
  static DensityMatrix trusted(std::vector<long> dims, Matrix rho);

 private:
  struct Trusted {};
  DensityMatrix(Trusted, std::vector<long> dims, Matrix rho);
};

DensityMatrix pure_density(const PureState& psi);

// Factor bipartition: side A listed first, complement B in ascending order.
struct Split {
  std::vector<int> a;
  std::vector<int> b;
  long dim_a = 1;
  long dim_b = 1;
};

Split make_split(const std::vector<long>& dims, const std::vector<int>& a_factors);

// Reorders the tensor factors so the A factors come first; the result is a
// plain bipartite object on C^dim_a (x) C^dim_b.
Vector regroup(const PureState& psi, const Split& split);
Matrix regroup(const DensityMatrix& rho, const Split& split);

struct GroundResult {
  PureState state;
  double energy = 0.0;
  double gap = 0.0;        // distance to the next eigenvalue
  bool degenerate = false; // gap < 1e-9
};

// Lowest eigenvector of a Hermitian operator. dims defaults to one factor of
// the full dimension.
GroundResult ground_state(const Matrix& h, std::vector<long> dims = {});

// exp(-H/kT)/Z, computed spectrally with the largest Boltzmann exponent
// shifted to zero. kT = 0 gives the uniform mixture over the ground space.
DensityMatrix thermal_state(const Matrix& h, double k_t, std::vector<long> dims = {});

DensityMatrix reduce(const PureState& psi, const std::vector<int>& keep);
DensityMatrix reduce(const DensityMatrix& rho, const std::vector<int>& keep);

}  // namespace spinrg::states
