#include "spinrg/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinrg/lattice.hpp"

namespace spinrg::entangle {

namespace {

using densemath::kProbZero;

Matrix spin_flip() {
  const Matrix sy = lattice::pauli('y');
  return densemath::kron(sy, sy);
}

void require_two_qubits(const states::DensityMatrix& rho, const char* who) {
  if (rho.dim() != 4) {
    throw std::invalid_argument(std::string(who) + ": state must be two qubits");
  }
}

double clip0(double x) { return x < 0.0 ? 0.0 : x; }

}  // namespace

SchmidtDecomposition schmidt_decompose(const states::PureState& psi,
                                       const std::vector<int>& a_factors) {
  const states::Split split = states::make_split(psi.dims, a_factors);
  const Vector v = states::regroup(psi, split);
  // Row index = A, column index = B; the regrouped vector is row-major.
  Matrix m(split.dim_a, split.dim_b);
  for (long a = 0; a < split.dim_a; ++a)
    for (long b = 0; b < split.dim_b; ++b) m(a, b) = v[a * split.dim_b + b];

  const densemath::Svd decomp = densemath::svd(m);
  long r = 0;
  while (r < decomp.singular_values.size() &&
         decomp.singular_values[r] * decomp.singular_values[r] > kProbZero) {
    ++r;
  }
  SchmidtDecomposition out;
  out.coefficients = decomp.singular_values.head(r).array().square();
  out.basis_a = decomp.u.leftCols(r);
  // M = U S V^dag means |Psi> = sum_a s_a |u^a> (x) conj(|V col a>).
  out.basis_b = decomp.v.leftCols(r).conjugate();
  return out;
}

double entropy_of_spectrum(const RealVector& probs) {
  double s = 0.0;
  for (long k = 0; k < probs.size(); ++k) {
    const double p = probs[k];
    if (p > kProbZero) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const states::DensityMatrix& rho) {
  return entropy_of_spectrum(densemath::hermitian_eig(rho.rho).values);
}

double concurrence(const states::DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const Matrix flip = spin_flip();
  const Matrix root = densemath::matrix_function(
      rho.rho, [](double x) { return std::sqrt(x); });
  const Matrix flipped = flip * rho.rho.conjugate() * flip;
  // Eigenvalues of R = sqrt(rho) rho~ sqrt(rho) are the squared Wootters l_i.
  const Matrix r = root * flipped * root;
  RealVector lambdas = densemath::hermitian_eig(r).values;
  for (long k = 0; k < lambdas.size(); ++k)
    lambdas[k] = std::sqrt(clip0(lambdas[k]));
  // Ascending order: c = l3 - l2 - l1 - l0.
  const double c = lambdas[3] - lambdas[2] - lambdas[1] - lambdas[0];
  return std::clamp(c, 0.0, 1.0);
}

double binary_entropy(double x) {
  double s = 0.0;
  if (x > kProbZero) s -= x * std::log2(x);
  if (1.0 - x > kProbZero) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

double eof_from_concurrence(double c) {
  const double x = (1.0 + std::sqrt(clip0(1.0 - c * c))) / 2.0;
  return binary_entropy(x);
}

double eof_two_qubits(const states::DensityMatrix& rho) {
  require_two_qubits(rho, "eof_two_qubits");
  return eof_from_concurrence(concurrence(rho));
}

double fidelity(const states::DensityMatrix& rho1, const states::DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Matrix root = densemath::matrix_function(
      rho1.rho, [](double x) { return std::sqrt(x); });
  const RealVector inner = densemath::hermitian_eig(root * rho2.rho * root).values;
  double sum = 0.0;
  for (long k = 0; k < inner.size(); ++k) sum += std::sqrt(clip0(inner[k]));
  return std::clamp(sum * sum, 0.0, 1.0);
}

double eof_lower_bound(const states::DensityMatrix& rho_ab,
                       const std::vector<int>& a_factors) {
  const states::Split split = states::make_split(rho_ab.dims, a_factors);
  const double s_a = von_neumann_entropy(states::reduce(rho_ab, split.a));
  const double s_b = von_neumann_entropy(states::reduce(rho_ab, split.b));
  const double s_ab = von_neumann_entropy(rho_ab);
  return std::max({0.0, s_a - s_ab, s_b - s_ab});
}

}  // namespace spinrg::entangle
