#pragma once

#include <vector>

#include "spinrg/densemath.hpp"
#include "spinrg/states.hpp"

namespace spinrg::entangle {

/// |Psi> = sum_a sqrt(p_a) |u^a>|v^a> with orthonormal u, v; p descending,
/// coefficients below 1e-12 dropped.
struct SchmidtDecomposition {
  RealVector coefficients;  // p_a
  Matrix basis_a;           // columns u^a
  Matrix basis_b;           // columns v^a

  long count() const { return coefficients.size(); }
};

SchmidtDecomposition schmidt_decompose(const states::PureState& psi,
                                       const std::vector<int>& a_factors);

// -sum p log2 p over entries > 1e-12. Bits.
double entropy_of_spectrum(const RealVector& probs);
double von_neumann_entropy(const states::DensityMatrix& rho);

// Wootters: C = max(0, l1 - l2 - l3 - l4), l descending square roots of the
// eigenvalues of rho (sy x sy) rho* (sy x sy). Two qubits only.
double concurrence(const states::DensityMatrix& rho);

double binary_entropy(double x);  // bits
double eof_from_concurrence(double c);

// Entanglement of formation, ebits. Two qubits only.
double eof_two_qubits(const states::DensityMatrix& rho);

// F = tr(sqrt(sqrt(r1) r2 sqrt(r1)))^2
double fidelity(const states::DensityMatrix& rho1, const states::DensityMatrix& rho2);

// max(0, S(A) - S(AB), S(B) - S(AB)), ebits.
double eof_lower_bound(const states::DensityMatrix& rho_ab,
                       const std::vector<int>& a_factors);

}  // namespace spinrg::entangle
