#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spinrg/lattice.hpp"
#include "spinrg/states.hpp"

using namespace spinrg;
using lattice::build_hamiltonian;
using lattice::connected_correlator;
using lattice::ModelKind;
using lattice::ModelSpec;

namespace {

ModelSpec heis(int sites, double j = 1.0) {
  ModelSpec spec;
  spec.kind = ModelKind::heisenberg;
  spec.sites = sites;
  spec.coupling = j;
  return spec;
}

ModelSpec ising(int sites, double j, double h) {
  ModelSpec spec;
  spec.kind = ModelKind::transverse_ising;
  spec.sites = sites;
  spec.coupling = j;
  spec.field = h;
  return spec;
}

// Kron-built reference Hamiltonian, independent of the bitwise assembly.
Matrix reference_hamiltonian(const ModelSpec& spec) {
  const long dim = spec.dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& [i, j] : lattice::bonds(spec)) {
    if (spec.kind == ModelKind::heisenberg) {
      for (char axis : {'x', 'y', 'z'}) {
        h += 0.5 * spec.coupling *
             lattice::site_operator(spec.sites, i, axis).matrix *
             lattice::site_operator(spec.sites, j, axis).matrix;
      }
    } else {
      h -= spec.coupling * lattice::site_operator(spec.sites, i, 'z').matrix *
           lattice::site_operator(spec.sites, j, 'z').matrix;
    }
  }
  if (spec.kind == ModelKind::transverse_ising) {
    for (int i = 0; i < spec.sites; ++i) {
      h -= spec.field * lattice::site_operator(spec.sites, i, 'x').matrix;
    }
  }
  return h;
}

states::PureState ground_of(const ModelSpec& spec) {
  return states::ground_state(build_hamiltonian(spec),
                              states::qubit_dims(spec.sites))
      .state;
}

}  // namespace

TEST_CASE("two-site Heisenberg has the singlet at -1.5 J") {
  const Matrix h = build_hamiltonian(heis(2));
  CHECK(densemath::hermitian_eig(h).values[0] == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(densemath::max_abs(build_hamiltonian(heis(2, 0.0))) == 0.0);
}

TEST_CASE("decoupled transverse Ising is a pure field term") {
  const ModelSpec spec = ising(2, 0.0, 1.0);
  const Matrix h = build_hamiltonian(spec);
  const Matrix expect = -lattice::site_operator(2, 0, 'x').matrix -
                        lattice::site_operator(2, 1, 'x').matrix;
  CHECK(densemath::max_abs(h - expect) < 1e-14);
  CHECK(densemath::hermitian_eig(h).values[0] == doctest::Approx(-2.0));
}

TEST_CASE("build_hamiltonian equals the kron-built reference") {
  for (const ModelSpec& spec :
       {heis(3), heis(4, 0.7), ising(3, 1.0, 0.5),
        [] { ModelSpec s = heis(4); s.boundary = lattice::Boundary::periodic; return s; }()}) {
    CHECK(densemath::max_abs(build_hamiltonian(spec) - reference_hamiltonian(spec)) < 1e-12);
  }
}

TEST_CASE("hamiltonians are Hermitian and Heisenberg conserves total sz") {
  for (const ModelSpec& spec : {heis(2), heis(5), ising(4, 1.0, 2.0)}) {
    CHECK(densemath::hermiticity_defect(build_hamiltonian(spec)) < 1e-12);
  }
  const ModelSpec spec = heis(5);
  const Matrix h = build_hamiltonian(spec);
  Matrix total_sz = Matrix::Zero(spec.dim(), spec.dim());
  for (int i = 0; i < spec.sites; ++i) {
    total_sz += lattice::site_operator(spec.sites, i, 'z').matrix;
  }
  CHECK(densemath::max_abs(h * total_sz - total_sz * h) < 1e-10);
}

TEST_CASE("model validation") {
  ModelSpec big = heis(15);
  CHECK_THROWS_AS(big.validate(), std::invalid_argument);
  ModelSpec neg = ising(3, 1.0, -0.5);
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  ModelSpec tiny = heis(1);
  CHECK_THROWS_AS(tiny.validate(), std::invalid_argument);
}

TEST_CASE("site operators are Hermitian involutions in the right slot") {
  oracle::Rng rng(3);
  for (char axis : {'x', 'y', 'z'}) {
    const lattice::SiteOperator op = lattice::site_operator(3, 1, axis);
    CHECK(densemath::hermiticity_defect(op.matrix) < 1e-14);
    CHECK(densemath::max_abs(op.matrix * op.matrix - Matrix::Identity(8, 8)) < 1e-14);
    const Matrix expect = densemath::kron(
        densemath::kron(Matrix::Identity(2, 2), lattice::pauli(axis)),
        Matrix::Identity(2, 2));
    CHECK(densemath::max_abs(op.matrix - expect) < 1e-14);
  }
}

TEST_CASE("connected correlator vanishes on product states") {
  oracle::Rng rng(5);
  // random product state of 4 qubits
  Vector amp = Vector::Ones(1);
  for (int k = 0; k < 4; ++k) {
    Vector q(2);
    q << rng.cgauss(), rng.cgauss();
    q /= q.norm();
    Vector next(amp.size() * 2);
    for (long i = 0; i < amp.size(); ++i) {
      next[2 * i] = amp[i] * q[0];
      next[2 * i + 1] = amp[i] * q[1];
    }
    amp = next;
  }
  const states::PureState psi(states::qubit_dims(4), amp);
  for (char a : {'x', 'y', 'z'})
    for (char b : {'x', 'y', 'z'})
      CHECK(std::abs(connected_correlator(psi, 0, a, 2, b)) < 1e-12);
}

TEST_CASE("singlet zz correlator is -1") {
  const states::PureState singlet = ground_of(heis(2));
  CHECK(connected_correlator(singlet, 0, 'z', 1, 'z') == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("4-site ground-state zz correlator matches the frozen oracle value") {
  const states::PureState gs = ground_of(heis(4));
  const double value = connected_correlator(gs, 0, 'z', 3, 'z');
  // dense expectation-value oracle: exactly -1/3 for the open 4-site chain
  const Matrix z0 = lattice::site_operator(4, 0, 'z').matrix;
  const Matrix z3 = lattice::site_operator(4, 3, 'z').matrix;
  const Vector& v = gs.amplitudes;
  const cdouble both = v.dot(Vector(z0 * (z3 * v)));
  const cdouble m0 = v.dot(Vector(z0 * v));
  const cdouble m3 = v.dot(Vector(z3 * v));
  const double reference = (both - m0 * m3).real();
  CHECK(value == doctest::Approx(reference).epsilon(1e-10));
  CHECK(value == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("correlator rejects coincident sites and is exchange symmetric") {
  const states::PureState gs = ground_of(heis(4));
  CHECK_THROWS_AS(connected_correlator(gs, 1, 'z', 1, 'z'), std::invalid_argument);

  const Matrix h = build_hamiltonian(heis(4));
  const states::DensityMatrix rho = states::thermal_state(h, 0.7, states::qubit_dims(4));
  for (auto [a, b] : {std::pair{'z', 'z'}, std::pair{'x', 'y'}}) {
    const double lhs = connected_correlator(rho, 0, a, 2, b);
    const double rhs = connected_correlator(rho, 2, b, 0, a);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(std::abs(lhs) <= 2.0);
  }
}

TEST_CASE("transverse Ising correlations decay faster away from the critical coupling") {
  // separation 4 at h = 2J is well below its value at h = J
  const int sites = 9;
  double at_critical = 0.0, off_critical = 0.0;
  {
    const states::PureState gs = ground_of(ising(sites, 1.0, 1.0));
    at_critical = std::abs(connected_correlator(gs, 0, 'z', 4, 'z'));
  }
  {
    const states::PureState gs = ground_of(ising(sites, 1.0, 2.0));
    off_critical = std::abs(connected_correlator(gs, 0, 'z', 4, 'z'));
  }
  CHECK(off_critical < at_critical);
}
