#include "spinrg/densemath.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spinrg::densemath {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermiticity_defect: matrix is not square");
  }
  return max_abs(m - m.adjoint());
}

void require_hermitian(const Matrix& m, const char* who) {
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    std::ostringstream msg;
    msg << who << ": input is not Hermitian, max|M - M^dag| = " << defect;
    throw std::invalid_argument(msg.str());
  }
}

Matrix identity(long n) { return Matrix::Identity(n, n); }

Eig hermitian_eig(const Matrix& m) {
  require_hermitian(m, "hermitian_eig");
  // Symmetrize so round-off in the input cannot leak into the solver.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return Eig{solver.eigenvalues(), solver.eigenvectors()};
}

Svd svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return Svd{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix partial_trace(const Matrix& rho, long dim_a, long dim_b, Keep keep) {
  if (dim_a < 1 || dim_b < 1 || rho.rows() != rho.cols() ||
      rho.rows() != dim_a * dim_b) {
    throw std::invalid_argument(
        "partial_trace: dims product does not match operator dimension");
  }
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (long a = 0; a < dim_a; ++a)
      for (long ap = 0; ap < dim_a; ++ap)
        for (long b = 0; b < dim_b; ++b)
          out(a, ap) += rho(a * dim_b + b, ap * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (long b = 0; b < dim_b; ++b)
    for (long bp = 0; bp < dim_b; ++bp)
      for (long a = 0; a < dim_a; ++a)
        out(b, bp) += rho(a * dim_b + b, a * dim_b + bp);
  return out;
}

Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f) {
  const Eig eig = hermitian_eig(m);
  RealVector mapped(eig.values.size());
  for (long k = 0; k < eig.values.size(); ++k) {
    double lambda = eig.values[k];
    if (lambda < 0.0 && lambda >= kEigClip) lambda = 0.0;
    const double value = f(lambda);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "matrix_function: f undefined at eigenvalue " << lambda;
      throw std::invalid_argument(msg.str());
    }
    mapped[k] = value;
  }
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace spinrg::densemath
