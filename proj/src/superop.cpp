#include "cpsemi/superop.hpp"

#include <cmath>
#include <string>

#include "cpsemi/errors.hpp"

namespace cpsemi {

CVector vec(const CMatrix& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

CMatrix unvec(const CVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionMismatch("unvec: length " + std::to_string(v.size()) +
                            " is not " + std::to_string(n) + "^2");
  }
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

CVector omega(int n) { return vec(CMatrix::Identity(n, n)); }

SuperOperator::SuperOperator(int n, CMatrix mat) : n_(n), mat_(std::move(mat)) {
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  if (n < 0 || mat_.rows() != nn || mat_.cols() != nn) {
    throw DimensionMismatch("superoperator matrix must be n^2 x n^2");
  }
}

SuperOperator SuperOperator::identity(int n) {
  return {n, CMatrix::Identity(n * n, n * n)};
}

SuperOperator SuperOperator::zero(int n) { return {n, CMatrix::Zero(n * n, n * n)}; }

SuperOperator SuperOperator::sandwich(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch("sandwich: operands must be square and equal size");
  }
  return {static_cast<int>(a.rows()), kron(b.transpose(), a)};
}

SuperOperator SuperOperator::conjugation(const CMatrix& v) {
  return sandwich(v, v.adjoint());
}

SuperOperator SuperOperator::left_right(const CMatrix& a, const CMatrix& b) {
  const auto n = static_cast<int>(a.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  return sandwich(a, id) + sandwich(id, b);
}

SuperOperator SuperOperator::transpose(int n) {
  CMatrix mat = CMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) mat(k * n + i, i * n + k) = 1.0;
  }
  return {n, std::move(mat)};
}

SuperOperator SuperOperator::from_kraus(std::span<const CMatrix> kraus, int n) {
  SuperOperator out = zero(n);
  for (const CMatrix& v : kraus) out += conjugation(v);
  return out;
}

CMatrix SuperOperator::operator()(const CMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) {
    throw DimensionMismatch("operand is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", map acts on M_" +
                            std::to_string(n_));
  }
  return unvec(mat_ * vec(x), n_);
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  if (other.n_ != n_) throw DimensionMismatch("adding maps on different algebras");
  mat_ += other.mat_;
  return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& other) {
  if (other.n_ != n_) throw DimensionMismatch("subtracting maps on different algebras");
  mat_ -= other.mat_;
  return *this;
}

SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("composing maps on different algebras");
  return {a.n_, a.mat_ * b.mat_};
}

CMatrix apply(const SuperOperator& p, const CMatrix& x) { return p(x); }

ChoiMatrix::ChoiMatrix(int n, CMatrix j) : n_(n), j_(std::move(j)) {
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  if (n < 0 || j_.rows() != nn || j_.cols() != nn) {
    throw DimensionMismatch("Choi matrix must be n^2 x n^2");
  }
}

// Both directions are the same index shuffle:
//   J(i*n + k, j*n + l) = P(E_ij)(k, l) = mat(l*n + k, j*n + i).
ChoiMatrix choi_of(const SuperOperator& p) {
  const int n = p.dim();
  const CMatrix& mat = p.matrix();
  CMatrix j(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < n; ++jj) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          j(i * n + k, jj * n + l) = mat(l * n + k, jj * n + i);
        }
      }
    }
  }
  return {n, std::move(j)};
}

SuperOperator choi_to_superop(const ChoiMatrix& choi) {
  const int n = choi.dim();
  const CMatrix& j = choi.matrix();
  CMatrix mat(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < n; ++jj) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          mat(l * n + k, jj * n + i) = j(i * n + k, jj * n + l);
        }
      }
    }
  }
  return {n, std::move(mat)};
}

namespace {

void fix_phase(CMatrix& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  // First entry (column-major) within rounding of the maximum magnitude.
  const double top = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v.data()[i]);
    if (mag >= top * (1.0 - 1e-10)) {
      best = i;
      best_mag = mag;
      break;
    }
  }
  if (best_mag <= 0.0) return;
  v *= std::conj(v.data()[best]) / best_mag;
}

}  // namespace

std::vector<CMatrix> kraus_of(const ChoiMatrix& choi, const Tolerances& tol) {
  const int n = choi.dim();
  const HermitianEig eig = hermitian_eig(choi.matrix(), tol);
  std::vector<CMatrix> out;
  if (eig.values.size() == 0) return out;
  const double lowest = eig.values(eig.values.size() - 1);
  const double scale = std::max({1.0, std::abs(eig.values(0)), std::abs(lowest)});
  if (lowest < -tol.psd_slack * scale) {
    throw NotPSD("Choi matrix has eigenvalue " + std::to_string(lowest));
  }
  const double cut = tol.eig_cut * scale;
  for (Eigen::Index m = 0; m < eig.values.size(); ++m) {
    const double mu = eig.values(m);
    if (mu <= cut) break;
    CMatrix v = std::sqrt(mu) * unvec(eig.vectors.col(m), n);
    fix_phase(v);
    out.push_back(std::move(v));
  }
  return out;
}

double choi_min_eigenvalue(const SuperOperator& p) {
  return min_eigenvalue(choi_of(p).matrix());
}

bool is_completely_positive(const SuperOperator& p, const Tolerances& tol) {
  const ChoiMatrix j = choi_of(p);
  if (!is_hermiticity_preserving(p, tol)) return false;
  return min_eigenvalue(j.matrix()) >= -tol.psd_slack * tolerance_scale(j.matrix());
}

bool is_hermiticity_preserving(const SuperOperator& p, const Tolerances& tol) {
  const CMatrix j = choi_of(p).matrix();
  return (j - j.adjoint()).norm() <= tol.residual * std::max(1.0, j.norm());
}

bool is_unital(const SuperOperator& p, const Tolerances& tol) {
  const int n = p.dim();
  const CMatrix id = CMatrix::Identity(n, n);
  return (p(id) - id).norm() <= tol.residual * std::max(1.0, p.matrix().norm());
}

}  // namespace cpsemi
