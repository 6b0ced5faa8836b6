#include "spinrg/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace spinrg::lattice {

namespace {

// Action of sigma_site^axis on a basis index: sigma |b> = phase |b'>.
// Site 0 is the most significant bit; bit value 0 means spin-up.
struct PauliAction {
  long out;
  cdouble phase;
};

PauliAction act(int sites, int site, char axis, long b) {
  const long mask = 1L << (sites - 1 - site);
  const bool down = (b & mask) != 0;
  switch (axis) {
    case 'x':
      return {b ^ mask, cdouble(1.0, 0.0)};
    case 'y':
      // sy|0> = i|1>, sy|1> = -i|0>
      return {b ^ mask, down ? cdouble(0.0, -1.0) : cdouble(0.0, 1.0)};
    case 'z':
      return {b, down ? cdouble(-1.0, 0.0) : cdouble(1.0, 0.0)};
    default:
      throw std::invalid_argument("pauli axis must be one of x, y, z");
  }
}

void check_site_pair(int sites, int i, int j) {
  if (i < 0 || i >= sites || j < 0 || j >= sites) {
    throw std::invalid_argument("connected_correlator: site index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("connected_correlator: sites must be distinct");
  }
}

int qubit_count(const std::vector<long>& dims) {
  for (long d : dims)
    if (d != 2)
      throw std::invalid_argument("connected_correlator: state is not a qubit chain");
  return static_cast<int>(dims.size());
}

// sigma_i^alpha |psi>
Vector apply_site(const Vector& psi, int sites, int site, char axis) {
  Vector out = Vector::Zero(psi.size());
  for (long b = 0; b < psi.size(); ++b) {
    const PauliAction pa = act(sites, site, axis, b);
    out[pa.out] += pa.phase * psi[b];
  }
  return out;
}

// tr(rho sigma_i^alpha) with optional second factor sigma_j^beta applied first.
cdouble trace_with_paulis(const Matrix& rho, int sites,
                          const std::vector<std::pair<int, char>>& ops) {
  cdouble sum = 0.0;
  for (long b = 0; b < rho.rows(); ++b) {
    long cur = b;
    cdouble phase = 1.0;
    // A|b> for A = ops[0] ops[1] ... (rightmost applied first).
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      const PauliAction pa = act(sites, it->first, it->second, cur);
      cur = pa.out;
      phase *= pa.phase;
    }
    sum += phase * rho(b, cur);  // tr(rho A) = sum_b A_{cur,b} rho_{b,cur}
  }
  return sum;
}

}  // namespace

void ModelSpec::validate() const {
  if (sites < 2) throw std::invalid_argument("ModelSpec: sites must be >= 2");
  if (sites > kMaxSites) {
    throw std::invalid_argument("ModelSpec: sites exceeds the dense ceiling of 14");
  }
  if (kind == ModelKind::transverse_ising && field < 0.0) {
    throw std::invalid_argument("ModelSpec: transverse_ising requires field >= 0");
  }
}

Matrix pauli(char axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 'x':
      m << 0, 1, 1, 0;
      break;
    case 'y':
      m << 0, cdouble(0, -1), cdouble(0, 1), 0;
      break;
    case 'z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli axis must be one of x, y, z");
  }
  return m;
}

SiteOperator site_operator(int sites, int site, char axis) {
  if (site < 0 || site >= sites) {
    throw std::invalid_argument("site_operator: site out of range");
  }
  const long dim = 1L << sites;
  Matrix m = Matrix::Zero(dim, dim);
  for (long b = 0; b < dim; ++b) {
    const PauliAction pa = act(sites, site, axis, b);
    m(pa.out, b) += pa.phase;
  }
  return SiteOperator{site, axis, std::move(m)};
}

std::vector<std::pair<int, int>> bonds(const ModelSpec& spec) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < spec.sites; ++i) out.emplace_back(i, i + 1);
  if (spec.boundary == Boundary::periodic && spec.sites > 2) {
    out.emplace_back(spec.sites - 1, 0);
  }
  return out;
}

Matrix build_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  const long dim = spec.dim();
  Matrix h = Matrix::Zero(dim, dim);
  const auto edge = bonds(spec);
  if (spec.kind == ModelKind::heisenberg) {
    for (const auto& [i, j] : edge) {
      for (char axis : {'x', 'y', 'z'}) {
        for (long b = 0; b < dim; ++b) {
          const PauliAction pj = act(spec.sites, j, axis, b);
          const PauliAction pi = act(spec.sites, i, axis, pj.out);
          h(pi.out, b) += 0.5 * spec.coupling * pi.phase * pj.phase;
        }
      }
    }
  } else {
    for (const auto& [i, j] : edge) {
      for (long b = 0; b < dim; ++b) {
        const PauliAction pj = act(spec.sites, j, 'z', b);
        const PauliAction pi = act(spec.sites, i, 'z', pj.out);
        h(pi.out, b) -= spec.coupling * pi.phase * pj.phase;
      }
    }
    for (int i = 0; i < spec.sites; ++i) {
      for (long b = 0; b < dim; ++b) {
        const PauliAction pa = act(spec.sites, i, 'x', b);
        h(pa.out, b) -= spec.field * pa.phase;
      }
    }
  }
  return h;
}

double connected_correlator(const states::PureState& psi, int i, char alpha,
                            int j, char beta) {
  const int sites = qubit_count(psi.dims);
  check_site_pair(sites, i, j);
  const Vector sj = apply_site(psi.amplitudes, sites, j, beta);
  const Vector sij = apply_site(sj, sites, i, alpha);
  const cdouble both = psi.amplitudes.dot(sij);
  const cdouble mean_i =
      psi.amplitudes.dot(apply_site(psi.amplitudes, sites, i, alpha));
  const cdouble mean_j = psi.amplitudes.dot(sj);
  return (both - mean_i * mean_j).real();
}

double connected_correlator(const states::DensityMatrix& rho, int i, char alpha,
                            int j, char beta) {
  const int sites = qubit_count(rho.dims);
  check_site_pair(sites, i, j);
  const cdouble both = trace_with_paulis(rho.rho, sites, {{i, alpha}, {j, beta}});
  const cdouble mean_i = trace_with_paulis(rho.rho, sites, {{i, alpha}});
  const cdouble mean_j = trace_with_paulis(rho.rho, sites, {{j, beta}});
  return (both - mean_i * mean_j).real();
}

}  // namespace spinrg::lattice
