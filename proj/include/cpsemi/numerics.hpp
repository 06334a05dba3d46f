#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace cpsemi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Numerical cut-offs shared by every module.
///
/// All comparisons against zero are relative: a threshold `tol` applied to an
/// operand `m` means `tol * max(1, |m|_2)`, see tolerance_scale().
struct Tolerances {
  double eig_cut = 1e-9;    ///< eigenvalue / singular value truncation
  double psd_slack = 1e-9;  ///< admissible negative eigenvalue magnitude
  double residual = 1e-10;  ///< relative reconstruction error
};

/// max(1, largest singular value of m).
double tolerance_scale(const CMatrix& m);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// Eigenpairs of a Hermitian matrix, eigenvalues sorted descending.
struct HermitianEig {
  RVector values;
  CMatrix vectors;  ///< orthonormal columns matching `values`
};

/// Throws NotHermitian if |m - m*|_F > residual * |m|_F.
HermitianEig hermitian_eig(const CMatrix& m, const Tolerances& tol = {});

/// Smallest eigenvalue of a Hermitian matrix (no precondition check; the
/// Hermitian part is used).
double min_eigenvalue(const CMatrix& m);

/// Matrix exponential. Normal inputs go through a unitary diagonalization,
/// everything else through Pade scaling-and-squaring.
CMatrix expm(const CMatrix& m);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix. Eigenvalues at or
/// below eig_cut (relative) are treated as zero. Throws NotPSD.
CMatrix pinv(const CMatrix& m, const Tolerances& tol = {});

/// Number of singular values above eig_cut * max(1, largest singular value).
int rank_tol(const CMatrix& m, const Tolerances& tol = {});

template <typename Vector>
struct LstsqResult {
  Vector x;
  double residual = 0.0;  ///< |A x - b|_2
};

/// Minimum-norm least-squares solution of A x = b.
LstsqResult<CVector> lstsq(const CMatrix& a, const CVector& b);
LstsqResult<RVector> lstsq(const RMatrix& a, const RVector& b);

/// Orthonormal basis (columns) of the null space of `a`.
CMatrix null_space(const CMatrix& a, const Tolerances& tol = {});

/// Orthonormal basis (columns) of the column space of `a`.
CMatrix range_basis(const CMatrix& a, const Tolerances& tol = {});

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// True when |a - b|_F <= rel * max(1, |a|_F, |b|_F).
bool approx_equal(const CMatrix& a, const CMatrix& b, double rel);

}  // namespace cpsemi
