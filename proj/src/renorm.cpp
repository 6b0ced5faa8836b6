#include "spinrg/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinrg/entangle.hpp"

namespace spinrg::renorm {

namespace {

constexpr double kOrthoTol = 1e-9;
constexpr double kDegenerateGap = 1e-9;
constexpr double kTraceFloor = 1e-10;
constexpr double kInvalid = -std::numeric_limits<double>::infinity();
constexpr long kSuperblockCeiling = 1L << 14;

// Deterministic generator; avoids tying results to library distributions.
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // (0, 1]
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
  double gaussian() {
    const double u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }
};

// Thin QR with the R diagonal rotated real-positive: smooth near full-rank
// inputs and phase-deterministic.
Matrix qf(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix r = qr.matrixQR().topRows(m.cols());
  for (long j = 0; j < q.cols(); ++j) {
    const cdouble rjj = r(j, j);
    if (std::abs(rjj) > 1e-300) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Matrix random_stiefel(SplitMix& rng, long d, long m) {
  Matrix g(d, m);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < m; ++j) g(i, j) = cdouble(rng.gaussian(), rng.gaussian());
  return qf(g);
}

using Objective = std::function<double(const std::vector<Matrix>&)>;

long param_count(const std::vector<Matrix>& ws) {
  long n = 0;
  for (const Matrix& w : ws) n += 2 * w.size();
  return n;
}

Eigen::VectorXd pack(const std::vector<Matrix>& ws) {
  Eigen::VectorXd p(param_count(ws));
  long at = 0;
  for (const Matrix& w : ws) {
    for (long j = 0; j < w.cols(); ++j)
      for (long i = 0; i < w.rows(); ++i) {
        p[at++] = w(i, j).real();
        p[at++] = w(i, j).imag();
      }
  }
  return p;
}

std::vector<Matrix> unpack(const Eigen::VectorXd& p, const std::vector<Matrix>& shapes) {
  std::vector<Matrix> ws;
  ws.reserve(shapes.size());
  long at = 0;
  for (const Matrix& shape : shapes) {
    Matrix w(shape.rows(), shape.cols());
    for (long j = 0; j < w.cols(); ++j)
      for (long i = 0; i < w.rows(); ++i) {
        w(i, j) = cdouble(p[at], p[at + 1]);
        at += 2;
      }
    ws.push_back(qf(w));
  }
  return ws;
}

struct AscentOutcome {
  std::vector<Matrix> ws;
  double value = kInvalid;
  bool valid = false;
};

// Backtracking gradient ascent with central-difference gradients; the
// isometries are re-orthonormalized (QR retraction) at every evaluation and
// after every accepted step.
AscentOutcome ascend_from(const std::vector<Matrix>& seed, const Objective& f,
                          const OptimizerConfig& opt) {
  Eigen::VectorXd p = pack(seed);
  const auto eval = [&](const Eigen::VectorXd& q) { return f(unpack(q, seed)); };

  AscentOutcome out;
  double cur = eval(p);
  if (cur == kInvalid) return out;

  std::vector<double> history{cur};
  double eta = opt.initial_step;
  Eigen::VectorXd grad(p.size());

  for (int step = 0; step < opt.max_steps; ++step) {
    for (long k = 0; k < p.size(); ++k) {
      Eigen::VectorXd q = p;
      q[k] = p[k] + opt.fd_step;
      const double up = eval(q);
      q[k] = p[k] - opt.fd_step;
      const double down = eval(q);
      grad[k] = (up == kInvalid || down == kInvalid)
                    ? 0.0
                    : (up - down) / (2.0 * opt.fd_step);
    }

    if (grad.norm() > 1e-14) {
      double trial = eta;
      for (int bt = 0; bt < 40 && trial > 1e-14; ++bt) {
        const Eigen::VectorXd cand = p + trial * grad;
        const double fc = eval(cand);
        if (fc > cur) {
          p = pack(unpack(cand, seed));
          cur = fc;
          eta = std::min(trial * 2.0, 1.0);
          break;
        }
        trial *= 0.5;
      }
    }

    history.push_back(cur);
    const int window = opt.stall_window;
    if (static_cast<int>(history.size()) > window &&
        cur - history[history.size() - 1 - window] < opt.improvement_tol) {
      break;
    }
  }

  out.ws = unpack(p, seed);
  out.value = cur;
  out.valid = true;
  return out;
}

struct BestSearch {
  AscentOutcome best;
  bool any_valid = false;

  void consider(const AscentOutcome& outcome) {
    if (!outcome.valid) return;
    if (!any_valid || outcome.value > best.value) best = outcome;
    any_valid = true;
  }
};

// Best ascent over the seeded restart plus opt.restarts random restarts.
BestSearch multistart(const std::vector<Matrix>& dmrg_seed, const Objective& f,
                      const OptimizerConfig& opt) {
  BestSearch search;
  if (opt.seed_with_dmrg) search.consider(ascend_from(dmrg_seed, f, opt));
  for (int r = 0; r < opt.restarts; ++r) {
    SplitMix rng(opt.seed ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(r + 1)));
    std::vector<Matrix> ws;
    ws.reserve(dmrg_seed.size());
    for (const Matrix& shape : dmrg_seed)
      ws.push_back(random_stiefel(rng, shape.rows(), shape.cols()));
    search.consider(ascend_from(ws, f, opt));
  }
  return search;
}

Projection projection_from_rho(const Matrix& rho_a, long m) {
  const long d = rho_a.rows();
  if (m < 1 || m > d) {
    throw std::invalid_argument("dmrg_projection: need 1 <= m <= dim A");
  }
  const densemath::Eig eig = densemath::hermitian_eig(rho_a);
  Matrix cols(d, m);
  for (long k = 0; k < m; ++k) cols.col(k) = eig.vectors.col(d - 1 - k);
  const bool tie =
      m < d && (eig.values[d - m] - eig.values[d - m - 1] < kDegenerateGap);
  return Projection{Isometry(std::move(cols)), tie};
}

// Regrouped bipartite matrix of psi: rows = A, columns = B.
Matrix bipartite_matrix(const states::PureState& psi, const states::Split& split) {
  const Vector v = states::regroup(psi, split);
  Matrix m(split.dim_a, split.dim_b);
  for (long a = 0; a < split.dim_a; ++a)
    for (long b = 0; b < split.dim_b; ++b) m(a, b) = v[a * split.dim_b + b];
  return m;
}

double entropy_of_compressed(const Matrix& rho_a, const Matrix& w) {
  const Matrix compressed = w.adjoint() * rho_a * w;
  const double t = compressed.trace().real();
  if (t <= kTraceFloor) return kInvalid;
  return entangle::entropy_of_spectrum(
      densemath::hermitian_eig(compressed / t).values);
}

double eof_of_compressed(const Matrix& rho_bipartite, const Matrix& wa,
                         const Matrix& wb) {
  const Matrix k = densemath::kron(wa, wb);
  Matrix compressed = k.adjoint() * rho_bipartite * k;
  const double t = compressed.trace().real();
  if (t <= kTraceFloor) return kInvalid;
  compressed /= t;
  return entangle::eof_two_qubits(
      states::DensityMatrix::trusted({2, 2}, std::move(compressed)));
}

}  // namespace

Isometry::Isometry(Matrix columns_in) : columns(std::move(columns_in)) {
  if (columns.cols() < 1 || columns.cols() > columns.rows()) {
    throw std::invalid_argument("Isometry: need 1 <= m <= d");
  }
  const Matrix gram = columns.adjoint() * columns;
  const double defect =
      densemath::max_abs(gram - Matrix::Identity(gram.rows(), gram.cols()));
  if (defect > kOrthoTol) {
    throw std::invalid_argument("Isometry: columns are not orthonormal");
  }
}

Isometry Isometry::identity(long d) { return Isometry(Matrix::Identity(d, d)); }

double truncation_error(const Isometry& p, const states::PureState& psi,
                        const std::vector<int>& a_factors) {
  const states::Split split = states::make_split(psi.dims, a_factors);
  if (p.d() != split.dim_a) {
    throw std::invalid_argument("truncation_error: isometry does not match dim A");
  }
  const Matrix m = bipartite_matrix(psi, split);
  const Matrix residual = m - p.columns * (p.columns.adjoint() * m);
  return residual.squaredNorm();
}

Projection dmrg_projection(const states::PureState& psi,
                           const std::vector<int>& a_factors, long m) {
  return projection_from_rho(states::reduce(psi, a_factors).rho, m);
}

Projection dmrg_projection_mixed(const states::DensityMatrix& rho_ab,
                                 const std::vector<int>& a_factors, long m) {
  return projection_from_rho(states::reduce(rho_ab, a_factors).rho, m);
}

EmpPure emp_projection_pure(const states::PureState& psi,
                            const std::vector<int>& a_factors, long m,
                            const OptimizerConfig& opt) {
  const Matrix rho_a = states::reduce(psi, a_factors).rho;
  if (m < 1 || m > rho_a.rows()) {
    throw std::invalid_argument("emp_projection_pure: need 1 <= m <= dim A");
  }
  const Objective objective = [&](const std::vector<Matrix>& ws) {
    return entropy_of_compressed(rho_a, ws[0]);
  };
  const std::vector<Matrix> seed = {dmrg_projection(psi, a_factors, m).isometry.columns};
  const BestSearch search = multistart(seed, objective, opt);
  if (!search.any_valid) {
    return EmpPure{Isometry(seed[0]), 0.0, true};
  }
  return EmpPure{Isometry(search.best.ws[0]), search.best.value, false};
}

EmpMixed emp_projection_mixed(const states::DensityMatrix& rho_ab,
                              const std::vector<int>& a_factors, long m_a,
                              long m_b, const OptimizerConfig& opt) {
  if (m_a * m_b != 4 || m_a != 2 || m_b != 2) {
    throw std::invalid_argument(
        "emp_projection_mixed: renormalized state must be two qubits (m_a = m_b = 2)");
  }
  const states::Split split = states::make_split(rho_ab.dims, a_factors);
  if (m_a > split.dim_a || m_b > split.dim_b) {
    throw std::invalid_argument("emp_projection_mixed: m exceeds block dimension");
  }
  const Matrix regrouped = states::regroup(rho_ab, split);
  const Objective objective = [&](const std::vector<Matrix>& ws) {
    return eof_of_compressed(regrouped, ws[0], ws[1]);
  };
  const std::vector<Matrix> seed = {
      dmrg_projection_mixed(rho_ab, split.a, m_a).isometry.columns,
      dmrg_projection_mixed(rho_ab, split.b, m_b).isometry.columns};
  const BestSearch search = multistart(seed, objective, opt);
  if (!search.any_valid) {
    return EmpMixed{Isometry(seed[0]), Isometry(seed[1]), 0.0, true};
  }
  return EmpMixed{Isometry(search.best.ws[0]), Isometry(search.best.ws[1]),
                  search.best.value, false};
}

SpinBlock exact_block(const lattice::ModelSpec& spec, int sites) {
  if (sites < 1 || sites > lattice::kMaxSites) {
    throw std::invalid_argument("exact_block: sites out of range");
  }
  SpinBlock block;
  block.sites = sites;
  if (sites == 1) {
    block.hamiltonian = Matrix::Zero(2, 2);
    if (spec.kind == lattice::ModelKind::transverse_ising) {
      block.hamiltonian = -spec.field * lattice::pauli('x');
    }
    block.boundary = {lattice::pauli('x'), lattice::pauli('y'), lattice::pauli('z')};
    return block;
  }
  lattice::ModelSpec sub = spec;
  sub.sites = sites;
  sub.boundary = lattice::Boundary::open;
  block.hamiltonian = lattice::build_hamiltonian(sub);
  block.boundary = {lattice::site_operator(sites, sites - 1, 'x').matrix,
                    lattice::site_operator(sites, sites - 1, 'y').matrix,
                    lattice::site_operator(sites, sites - 1, 'z').matrix};
  return block;
}

SpinBlock grow_block(const SpinBlock& block, const lattice::ModelSpec& spec) {
  const long d = block.hamiltonian.rows();
  const Matrix eye = densemath::identity(d);
  SpinBlock grown;
  grown.sites = block.sites + 1;
  grown.hamiltonian = densemath::kron(block.hamiltonian, densemath::identity(2));
  if (spec.kind == lattice::ModelKind::heisenberg) {
    for (int a = 0; a < 3; ++a) {
      grown.hamiltonian += 0.5 * spec.coupling *
                           densemath::kron(block.boundary[a],
                                           lattice::pauli("xyz"[a]));
    }
  } else {
    grown.hamiltonian -=
        spec.coupling * densemath::kron(block.boundary[2], lattice::pauli('z'));
    grown.hamiltonian -= spec.field * densemath::kron(eye, lattice::pauli('x'));
  }
  grown.boundary = {densemath::kron(eye, lattice::pauli('x')),
                    densemath::kron(eye, lattice::pauli('y')),
                    densemath::kron(eye, lattice::pauli('z'))};
  return grown;
}

SpinBlock conjugate_block(const SpinBlock& block, const Isometry& w) {
  if (w.d() != block.hamiltonian.rows()) {
    throw std::invalid_argument("conjugate_block: isometry does not match block");
  }
  SpinBlock out;
  out.sites = block.sites;
  out.hamiltonian = w.columns.adjoint() * block.hamiltonian * w.columns;
  for (int a = 0; a < 3; ++a) {
    out.boundary[a] = w.columns.adjoint() * block.boundary[a] * w.columns;
  }
  return out;
}

Matrix superblock_hamiltonian(const SpinBlock& block, const lattice::ModelSpec& spec) {
  const long d = block.hamiltonian.rows();
  if (d * d > kSuperblockCeiling) {
    throw std::invalid_argument(
        "superblock dimension exceeds 2^14; reduce m or block size");
  }
  const Matrix eye = densemath::identity(d);
  Matrix h = densemath::kron(block.hamiltonian, eye) +
             densemath::kron(eye, block.hamiltonian);
  if (spec.kind == lattice::ModelKind::heisenberg) {
    for (int a = 0; a < 3; ++a) {
      h += 0.5 * spec.coupling *
           densemath::kron(block.boundary[a], block.boundary[a]);
    }
  } else {
    h -= spec.coupling * densemath::kron(block.boundary[2], block.boundary[2]);
  }
  return h;
}

RgRunReport wilson_run(const lattice::ModelSpec& spec, long m, int block_init,
                       int max_iters, double conv_threshold) {
  spec.validate();
  if (spec.boundary != lattice::Boundary::open) {
    throw std::invalid_argument("wilson_run: open boundary required");
  }
  if (m < 1) throw std::invalid_argument("wilson_run: m must be >= 1");
  if (block_init < 1 || block_init > spec.sites) {
    throw std::invalid_argument("wilson_run: block_init out of range");
  }

  SpinBlock block = exact_block(spec, block_init);
  RgRunReport report;
  for (int iter = 0; iter < max_iters; ++iter) {
    const densemath::Eig eig = densemath::hermitian_eig(block.hamiltonian);
    const Vector gs = eig.vectors.col(0);
    const double energy = eig.values[0];
    const double per_site = energy / block.sites;
    const double bsz = (gs.adjoint() * block.boundary[2] * gs)(0, 0).real();
    const long dim = block.hamiltonian.rows();

    RgIteration it;
    it.sites = block.sites;
    it.kept = std::min(m, dim);
    it.energy = energy;
    it.energy_per_site = per_site;
    it.boundary_sz = bsz;
    it.delta = report.iterations.empty()
                   ? 0.0
                   : std::abs(per_site - report.iterations.back().energy_per_site);
    report.iterations.push_back(it);

    if (conv_threshold > 0.0 && report.iterations.size() > 1 &&
        it.delta < conv_threshold) {
      report.converged = true;
      break;
    }
    if (block.sites >= spec.sites) break;

    if (dim > m) {
      block = conjugate_block(block, Isometry(eig.vectors.leftCols(m)));
    }
    block = grow_block(block, spec);
  }
  return report;
}

RgRunReport dmrg_run(const lattice::ModelSpec& spec, long m, int max_iters,
                     double conv_threshold) {
  spec.validate();
  if (spec.boundary != lattice::Boundary::open) {
    throw std::invalid_argument("dmrg_run: open boundary required");
  }
  if (m < 1) throw std::invalid_argument("dmrg_run: m must be >= 1");
  if (spec.sites < 4 || spec.sites % 2 != 0) {
    throw std::invalid_argument("dmrg_run: target sites must be even and >= 4");
  }

  SpinBlock block = exact_block(spec, 1);
  RgRunReport report;
  for (int iter = 0; iter < max_iters; ++iter) {
    const SpinBlock grown = grow_block(block, spec);
    const long d2 = grown.hamiltonian.rows();
    const Matrix h_super = superblock_hamiltonian(grown, spec);
    const densemath::Eig eig = densemath::hermitian_eig(h_super);
    const Vector gs = eig.vectors.col(0);
    const int sites_super = 2 * grown.sites;
    const double energy = eig.values[0];
    const double per_site = energy / sites_super;

    // <sz> at the left middle site: tr(sz_block rho_A) with rho_A = M M^dag
    // from the (block, environment) reshape of the ground state.
    Eigen::Map<const Matrix> psi_mat(gs.data(), d2, d2);
    const Matrix rho_block = psi_mat.transpose() * psi_mat.conjugate();
    const double bsz = (grown.boundary[2] * rho_block).trace().real();

    RgIteration it;
    it.sites = sites_super;
    it.kept = std::min(m, d2);
    it.energy = energy;
    it.energy_per_site = per_site;
    it.boundary_sz = bsz;
    it.delta = report.iterations.empty()
                   ? 0.0
                   : std::abs(per_site - report.iterations.back().energy_per_site);
    report.iterations.push_back(it);

    if (conv_threshold > 0.0 && report.iterations.size() > 1 &&
        it.delta < conv_threshold) {
      report.converged = true;
      break;
    }
    if (sites_super >= spec.sites) break;

    if (d2 > m) {
      const states::PureState psi({d2, d2}, gs);
      block = conjugate_block(grown, dmrg_projection(psi, {0}, m).isometry);
    } else {
      block = grown;
    }
  }
  return report;
}

}  // namespace spinrg::renorm
