#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace spinrg {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace densemath {

// Absolute tolerance on max|M - M^dag| accepted by Hermitian-only routines.
inline constexpr double kHermitianTol = 1e-10;
// Probabilities / Schmidt coefficients below this are treated as exact zeros.
inline constexpr double kProbZero = 1e-12;
// Negative eigenvalues above this are clipped to 0 before sqrt/log-type maps.
inline constexpr double kEigClip = -1e-10;

double max_abs(const Matrix& m);

// max|M - M^dag|
double hermiticity_defect(const Matrix& m);

// Throws std::invalid_argument with the measured asymmetry if m is not
// Hermitian within kHermitianTol.
void require_hermitian(const Matrix& m, const char* who);

Matrix identity(long n);

struct Eig {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, vectors.col(k) pairs with values[k]
};

Eig hermitian_eig(const Matrix& m);

struct Svd {
  Matrix u;
  RealVector singular_values;  // descending, >= 0
  Matrix v;                    // m = u * singular_values.asDiagonal() * v^dag
};

Svd svd(const Matrix& m);

enum class Keep { A, B };

// Trace out one side of a bipartite operator on C^dim_a (x) C^dim_b.
Matrix partial_trace(const Matrix& rho, long dim_a, long dim_b, Keep keep);

// V f(Lambda) V^dag for Hermitian m. Eigenvalues in [kEigClip, 0) are clipped
// to 0 first; rejects f that is non-finite anywhere on the clipped spectrum.
Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace densemath
}  // namespace spinrg
