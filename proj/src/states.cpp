#include "spinrg/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinrg::states {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kDegenerateGap = 1e-9;

std::vector<long> strides(const std::vector<long>& dims) {
  std::vector<long> s(dims.size());
  long acc = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

// map[old_index] = new_index under the factor reordering `order`.
std::vector<long> permutation_map(const std::vector<long>& dims,
                                  const std::vector<int>& order) {
  const long n = product(dims);
  std::vector<long> old_stride = strides(dims);
  std::vector<long> new_dims(dims.size());
  for (size_t p = 0; p < order.size(); ++p) new_dims[p] = dims[order[p]];
  std::vector<long> new_stride = strides(new_dims);

  std::vector<long> map(n);
  for (long idx = 0; idx < n; ++idx) {
    long out = 0;
    for (size_t p = 0; p < order.size(); ++p) {
      const long digit = (idx / old_stride[order[p]]) % dims[order[p]];
      out += digit * new_stride[p];
    }
    map[idx] = out;
  }
  return map;
}

}  // namespace

long product(const std::vector<long>& dims) {
  long n = 1;
  for (long d : dims) n *= d;
  return n;
}

std::vector<long> qubit_dims(int n) { return std::vector<long>(n, 2); }

PureState::PureState(std::vector<long> dims_in, Vector amplitudes_in)
    : dims(std::move(dims_in)), amplitudes(std::move(amplitudes_in)) {
  if (dims.empty() || product(dims) != amplitudes.size()) {
    throw std::invalid_argument("PureState: dims do not match amplitude count");
  }
  for (long d : dims)
    if (d < 1) throw std::invalid_argument("PureState: factor dims must be >= 1");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

DensityMatrix::DensityMatrix(std::vector<long> dims_in, Matrix rho_in)
    : dims(std::move(dims_in)), rho(std::move(rho_in)) {
  if (dims.empty() || rho.rows() != rho.cols() || product(dims) != rho.rows()) {
    throw std::invalid_argument("DensityMatrix: dims do not match matrix size");
  }
  densemath::require_hermitian(rho, "DensityMatrix");
  if (std::abs(rho.trace().real() - 1.0) > kTraceTol ||
      std::abs(rho.trace().imag()) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
  }
}

DensityMatrix::DensityMatrix(Trusted, std::vector<long> dims_in, Matrix rho_in)
    : dims(std::move(dims_in)), rho(std::move(rho_in)) {}

DensityMatrix DensityMatrix::trusted(std::vector<long> dims, Matrix rho) {
  return DensityMatrix(Trusted{}, std::move(dims), std::move(rho));
}

DensityMatrix pure_density(const PureState& psi) {
  return DensityMatrix::trusted(psi.dims,
                                psi.amplitudes * psi.amplitudes.adjoint());
}

Split make_split(const std::vector<long>& dims, const std::vector<int>& a_factors) {
  const int k = static_cast<int>(dims.size());
  if (a_factors.empty()) throw std::invalid_argument("make_split: empty A side");
  std::vector<bool> in_a(k, false);
  Split split;
  split.a = a_factors;
  for (int f : a_factors) {
    if (f < 0 || f >= k) throw std::invalid_argument("make_split: factor out of range");
    if (in_a[f]) throw std::invalid_argument("make_split: repeated factor");
    in_a[f] = true;
    split.dim_a *= dims[f];
  }
  for (int f = 0; f < k; ++f) {
    if (!in_a[f]) {
      split.b.push_back(f);
      split.dim_b *= dims[f];
    }
  }
  return split;
}

Vector regroup(const PureState& psi, const Split& split) {
  std::vector<int> order = split.a;
  order.insert(order.end(), split.b.begin(), split.b.end());
  const std::vector<long> map = permutation_map(psi.dims, order);
  Vector out(psi.dim());
  for (long idx = 0; idx < psi.dim(); ++idx) out[map[idx]] = psi.amplitudes[idx];
  return out;
}

Matrix regroup(const DensityMatrix& rho, const Split& split) {
  std::vector<int> order = split.a;
  order.insert(order.end(), split.b.begin(), split.b.end());
  const std::vector<long> map = permutation_map(rho.dims, order);
  Matrix out(rho.dim(), rho.dim());
  for (long i = 0; i < rho.dim(); ++i)
    for (long j = 0; j < rho.dim(); ++j) out(map[i], map[j]) = rho.rho(i, j);
  return out;
}

GroundResult ground_state(const Matrix& h, std::vector<long> dims) {
  if (dims.empty()) dims = {h.rows()};
  if (product(dims) != h.rows()) {
    throw std::invalid_argument("ground_state: dims do not match operator");
  }
  const densemath::Eig eig = densemath::hermitian_eig(h);
  const long n = eig.values.size();
  const double gap = n > 1 ? eig.values[1] - eig.values[0]
                           : std::numeric_limits<double>::infinity();
  GroundResult out{PureState(std::move(dims), eig.vectors.col(0)),
                   eig.values[0], gap, gap < kDegenerateGap};
  return out;
}

DensityMatrix thermal_state(const Matrix& h, double k_t, std::vector<long> dims) {
  if (k_t < 0.0) throw std::invalid_argument("thermal_state: kT must be >= 0");
  if (dims.empty()) dims = {h.rows()};
  if (product(dims) != h.rows()) {
    throw std::invalid_argument("thermal_state: dims do not match operator");
  }
  const densemath::Eig eig = densemath::hermitian_eig(h);
  const long n = eig.values.size();
  RealVector weights(n);
  if (k_t == 0.0) {
    // Uniform mixture over the (possibly degenerate) ground space.
    long count = 0;
    for (long k = 0; k < n; ++k)
      if (eig.values[k] - eig.values[0] < kDegenerateGap) ++count;
    for (long k = 0; k < n; ++k)
      weights[k] = (eig.values[k] - eig.values[0] < kDegenerateGap)
                       ? 1.0 / static_cast<double>(count)
                       : 0.0;
  } else {
    // Shift so the largest exponent of exp(-H/kT) is zero; no overflow at
    // small kT, harmless underflow for high-lying levels.
    for (long k = 0; k < n; ++k)
      weights[k] = std::exp(-(eig.values[k] - eig.values[0]) / k_t);
    weights /= weights.sum();
  }
  Matrix rho = eig.vectors * weights.asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix::trusted(std::move(dims), std::move(rho));
}

namespace {

DensityMatrix reduce_regrouped(const Matrix& bipartite, const Split& split,
                               const std::vector<long>& dims,
                               const std::vector<int>& keep) {
  Matrix kept = densemath::partial_trace(bipartite, split.dim_a, split.dim_b,
                                         densemath::Keep::A);
  std::vector<long> kept_dims;
  kept_dims.reserve(keep.size());
  for (int f : keep) kept_dims.push_back(dims[f]);
  return DensityMatrix::trusted(std::move(kept_dims), std::move(kept));
}

}  // namespace

DensityMatrix reduce(const PureState& psi, const std::vector<int>& keep) {
  const Split split = make_split(psi.dims, keep);
  const Vector v = regroup(psi, split);
  // rho_A = M M^dag with M the dim_a x dim_b reshape of the regrouped vector.
  Eigen::Map<const Matrix> m(v.data(), split.dim_b, split.dim_a);
  Matrix rho_a = m.transpose() * m.conjugate();
  std::vector<long> kept_dims;
  for (int f : keep) kept_dims.push_back(psi.dims[f]);
  return DensityMatrix::trusted(std::move(kept_dims), std::move(rho_a));
}

DensityMatrix reduce(const DensityMatrix& rho, const std::vector<int>& keep) {
  const Split split = make_split(rho.dims, keep);
  return reduce_regrouped(regroup(rho, split), split, rho.dims, keep);
}

}  // namespace spinrg::states
