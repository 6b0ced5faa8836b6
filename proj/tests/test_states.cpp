#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spinrg/entangle.hpp"
#include "spinrg/lattice.hpp"
#include "spinrg/states.hpp"

using namespace spinrg;
using states::DensityMatrix;
using states::ground_state;
using states::PureState;
using states::reduce;
using states::thermal_state;

namespace {

Matrix heis_hamiltonian(int sites) {
  lattice::ModelSpec spec;
  spec.sites = sites;
  return lattice::build_hamiltonian(spec);
}

}  // namespace

TEST_CASE("state validation") {
  Vector bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(PureState({2}, bad), std::invalid_argument);
  CHECK_THROWS_AS(PureState({4}, Vector::Ones(2) / std::sqrt(2.0)), std::invalid_argument);

  Matrix not_psd = Matrix::Zero(2, 2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({2}, not_psd), std::invalid_argument);
  Matrix not_unit = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix({2}, not_unit), std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix({2}, Matrix(0.5 * Matrix::Identity(2, 2))));
}

TEST_CASE("ground state of a single spin in sz is |1>") {
  const states::GroundResult gr = ground_state(lattice::pauli('z'));
  CHECK(gr.energy == doctest::Approx(-1.0));
  CHECK(std::abs(gr.state.amplitudes[1]) == doctest::Approx(1.0));
  CHECK_FALSE(gr.degenerate);
}

TEST_CASE("two-site Heisenberg ground state is the singlet up to phase") {
  const states::GroundResult gr = ground_state(heis_hamiltonian(2), {2, 2});
  const Vector& v = gr.state.amplitudes;
  CHECK(std::abs(v[0]) < 1e-10);
  CHECK(std::abs(v[3]) < 1e-10);
  // amplitudes on |01> and |10> are opposite
  CHECK(std::abs(v[1] + v[2]) < 1e-10);
  CHECK(std::abs(v[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("four-site ground energy matches the plane-rotation oracle") {
  const Matrix h = heis_hamiltonian(4);
  const states::GroundResult gr = ground_state(h, states::qubit_dims(4));
  Eigen::VectorXd vals;
  Eigen::MatrixXd vecs;
  oracle::jacobi_eig(h.real(), vals, vecs);
  CHECK(std::abs(gr.energy - vals[0]) < 1e-9);
  CHECK(gr.energy == doctest::Approx(-(1.5 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK_FALSE(gr.degenerate);
}

TEST_CASE("degenerate ground space is flagged") {
  Matrix h = Matrix::Zero(4, 4);
  h(2, 2) = 1.0;
  h(3, 3) = 1.0;
  const states::GroundResult gr = ground_state(h);
  CHECK(gr.degenerate);
}

TEST_CASE("thermal state limits") {
  const Matrix h = heis_hamiltonian(4);
  // infinite-temperature limit: maximally mixed within 1e-4 trace distance
  const DensityMatrix hot = thermal_state(h, 1e6);
  const Matrix flat = Matrix::Identity(16, 16) / 16.0;
  const RealVector diff = densemath::hermitian_eig(hot.rho - flat).values;
  CHECK(0.5 * diff.cwiseAbs().sum() < 1e-4);

  // kT = 0 with a unique ground state: the ground projector
  const DensityMatrix cold = thermal_state(h, 0.0);
  const states::GroundResult gr = ground_state(h);
  const Matrix proj = gr.state.amplitudes * gr.state.amplitudes.adjoint();
  CHECK(densemath::max_abs(cold.rho - proj) < 1e-10);

  CHECK_THROWS_AS(thermal_state(h, -0.1), std::invalid_argument);
}

TEST_CASE("kT = 0 with a degenerate ground space gives the uniform mixture") {
  Matrix h = Matrix::Zero(4, 4);
  h(2, 2) = 2.0;
  h(3, 3) = 3.0;
  const DensityMatrix rho = thermal_state(h, 0.0);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(1, 1) = 0.5;
  CHECK(densemath::max_abs(rho.rho - expect) < 1e-12);
}

TEST_CASE("thermal eigenvalues are Boltzmann weights of the oracle spectrum") {
  const Matrix h = heis_hamiltonian(4);
  const DensityMatrix rho = thermal_state(h, 1.0);
  Eigen::VectorXd vals;
  Eigen::MatrixXd vecs;
  oracle::jacobi_eig(h.real(), vals, vecs);
  Eigen::VectorXd weights(16);
  for (int k = 0; k < 16; ++k) weights[k] = std::exp(-(vals[k] - vals[0]));
  weights /= weights.sum();
  std::sort(weights.data(), weights.data() + 16);
  const RealVector got = densemath::hermitian_eig(rho.rho).values;
  for (int k = 0; k < 16; ++k) CHECK(std::abs(got[k] - weights[k]) < 1e-9);
}

TEST_CASE("thermal state is normalized and commutes with H across the kT grid") {
  const Matrix h = heis_hamiltonian(3);
  for (int k = 0; k <= 100; ++k) {
    const double kt = 0.05 * k;
    const DensityMatrix rho = thermal_state(h, kt);
    CHECK(std::abs(rho.rho.trace().real() - 1.0) < 1e-10);
    CHECK(densemath::max_abs(rho.rho * h - h * rho.rho) < 1e-9);
  }
}

TEST_CASE("reduce on product and Bell states") {
  oracle::Rng rng(43);
  Vector a = oracle::random_state(rng, 2);
  Vector b = oracle::random_state(rng, 3);
  Vector joint(6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) joint[i * 3 + j] = a[i] * b[j];
  const PureState psi({2, 3}, joint);
  const DensityMatrix kept = reduce(psi, {0});
  CHECK(densemath::max_abs(kept.rho - a * a.adjoint()) < 1e-12);

  Vector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  const DensityMatrix half = reduce(PureState({2, 2}, bell), {0});
  CHECK(densemath::max_abs(half.rho - 0.5 * Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("reduce matches the loop oracle, contiguous or not") {
  const Matrix h = heis_hamiltonian(4);
  const DensityMatrix rho = thermal_state(h, 0.8, states::qubit_dims(4));
  for (const std::vector<int>& keep :
       {std::vector<int>{0, 1}, std::vector<int>{1, 3}, std::vector<int>{2}}) {
    const DensityMatrix mine = reduce(rho, keep);
    const Matrix ref = oracle::partial_trace_loops(rho.rho, rho.dims, keep);
    CHECK(densemath::max_abs(mine.rho - ref) < 1e-12);
  }
  CHECK_THROWS_AS(reduce(rho, {}), std::invalid_argument);
}

TEST_CASE("pure-state reductions to either side share an entropy") {
  oracle::Rng rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    const PureState psi({2, 2, 2, 2}, oracle::random_state(rng, 16));
    const std::vector<int> a = trial % 2 ? std::vector<int>{0, 2} : std::vector<int>{0, 1};
    const std::vector<int> b = trial % 2 ? std::vector<int>{1, 3} : std::vector<int>{2, 3};
    const double sa = entangle::von_neumann_entropy(reduce(psi, a));
    const double sb = entangle::von_neumann_entropy(reduce(psi, b));
    CHECK(std::abs(sa - sb) < 1e-8);
  }
}
