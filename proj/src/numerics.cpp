#include "cpsemi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "cpsemi/errors.hpp"

namespace cpsemi {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double tolerance_scale(const CMatrix& m) {
  return std::max(1.0, spectral_norm(m));
}

HermitianEig hermitian_eig(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("hermitian_eig needs a square matrix");
  }
  const double asym = (m - m.adjoint()).norm();
  if (asym > tol.residual * m.norm()) {
    throw NotHermitian("|m - m*| = " + std::to_string(asym));
  }
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  const Eigen::Index size = m.rows();
  HermitianEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  if (size == 0) out.vectors.resize(0, 0);
  return out;
}

double min_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

namespace {

bool is_normal(const CMatrix& m) {
  const double scale = m.norm();
  if (scale == 0.0) return true;
  return (m * m.adjoint() - m.adjoint() * m).norm() <= 1e-13 * scale * scale;
}

CMatrix spectral_exp(const CMatrix& u, const CVector& lambda) {
  const CVector e = lambda.array().exp();
  return u * e.asDiagonal() * u.adjoint();
}

}  // namespace

CMatrix expm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("expm needs a square matrix");
  if (m.size() == 0) return m;
  if (!m.allFinite()) throw Error("expm: non-finite entries");
  if (is_normal(m)) {
    const double scale = m.norm();
    const CMatrix herm_part = 0.5 * (m + m.adjoint());
    const CMatrix skew_part = 0.5 * (m - m.adjoint());
    if (skew_part.norm() <= 1e-14 * scale) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(herm_part);
      return spectral_exp(es.eigenvectors(), es.eigenvalues().cast<Complex>());
    }
    if (herm_part.norm() <= 1e-14 * scale) {
      // -i * skew is Hermitian with eigenvalues w, exp(m) = U exp(i w) U*.
      const CMatrix h = Complex(0.0, -1.0) * skew_part;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
      const CVector lambda = Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>();
      return spectral_exp(es.eigenvectors(), lambda);
    }
    // General normal matrix: the Schur form is diagonal.
    Eigen::ComplexSchur<CMatrix> schur(m);
    return spectral_exp(schur.matrixU(), schur.matrixT().diagonal());
  }
  return m.exp();
}

CMatrix pinv(const CMatrix& m, const Tolerances& tol) {
  const HermitianEig eig = hermitian_eig(m, tol);
  const Eigen::Index size = m.rows();
  if (size == 0) return m;
  const double lowest = eig.values(size - 1);
  const double scale = std::max({1.0, std::abs(eig.values(0)), std::abs(lowest)});
  if (lowest < -tol.psd_slack * scale) {
    throw NotPSD("pinv: eigenvalue " + std::to_string(lowest));
  }
  CMatrix out = CMatrix::Zero(size, size);
  const double cut = tol.eig_cut * scale;
  for (Eigen::Index i = 0; i < size; ++i) {
    if (eig.values(i) > cut) {
      out += (1.0 / eig.values(i)) * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
  }
  return out;
}

int rank_tol(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  const double cut = tol.eig_cut * std::max(1.0, s(0));
  return static_cast<int>((s.array() > cut).count());
}

LstsqResult<CVector> lstsq(const CMatrix& a, const CVector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("lstsq: rows(A) != size(b)");
  LstsqResult<CVector> out;
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
  out.x = cod.solve(b);
  out.residual = (a * out.x - b).norm();
  return out;
}

LstsqResult<RVector> lstsq(const RMatrix& a, const RVector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("lstsq: rows(A) != size(b)");
  LstsqResult<RVector> out;
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(a);
  out.x = cod.solve(b);
  out.residual = (a * out.x - b).norm();
  return out;
}

CMatrix null_space(const CMatrix& a, const Tolerances& tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const int r = rank_tol(a, tol);
  return svd.matrixV().rightCols(cols - r);
}

CMatrix range_basis(const CMatrix& a, const Tolerances& tol) {
  if (a.cols() == 0) return CMatrix(a.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
  const int r = rank_tol(a, tol);
  return svd.matrixU().leftCols(r);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double rel) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= rel * scale;
}

}  // namespace cpsemi
