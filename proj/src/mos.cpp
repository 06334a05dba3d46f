#include "cpsemi/mos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpsemi/errors.hpp"

namespace cpsemi {

namespace {

CMatrix choi_from_basis(int n, const std::vector<CMatrix>& basis) {
  CMatrix j = CMatrix::Zero(n * n, n * n);
  for (const CMatrix& v : basis) {
    const CVector w = vec(v);
    j += w * w.adjoint();
  }
  return j;
}

}  // namespace

MetricOperatorSpace::MetricOperatorSpace(int n, std::vector<CMatrix> basis, ChoiMatrix choi,
                                         const Tolerances& tol)
    : n_(n), basis_(std::move(basis)), choi_(std::move(choi)), tol_(tol) {
  const CMatrix& j = choi_.matrix();
  choi_pinv_ = pinv(j, tol_);
  const HermitianEig eig = hermitian_eig(j, tol_);
  const auto d = static_cast<Eigen::Index>(basis_.size());
  range_ = eig.vectors.leftCols(d);
}

MetricOperatorSpace MetricOperatorSpace::from_choi(const ChoiMatrix& j, const Tolerances& tol) {
  const int n = j.dim();
  std::vector<CMatrix> basis = kraus_of(j, tol);
  // Rebuild J from the kept Kraus operators so that clamped eigenvalues are
  // exactly zero in the stored matrix.
  ChoiMatrix clean(n, choi_from_basis(n, basis));
  return {n, std::move(basis), std::move(clean), tol};
}

MetricOperatorSpace MetricOperatorSpace::from_cp_map(const SuperOperator& p,
                                                     const Tolerances& tol) {
  if (!is_completely_positive(p, tol)) {
    throw NotCP("Choi matrix min eigenvalue " + std::to_string(choi_min_eigenvalue(p)));
  }
  return from_choi(choi_of(p), tol);
}

MetricOperatorSpace MetricOperatorSpace::from_orthonormal_basis(int n, std::vector<CMatrix> basis,
                                                                const Tolerances& tol) {
  for (const CMatrix& v : basis) {
    if (v.rows() != n || v.cols() != n) {
      throw DimensionMismatch("basis element is not " + std::to_string(n) + "x" + std::to_string(n));
    }
  }
  CMatrix j = choi_from_basis(n, basis);
  if (rank_tol(j, tol) != static_cast<int>(basis.size())) {
    throw DimensionMismatch("basis operators are linearly dependent");
  }
  ChoiMatrix choi(n, std::move(j));
  return {n, std::move(basis), std::move(choi), tol};
}

MetricOperatorSpace MetricOperatorSpace::zero(int n, const Tolerances& tol) {
  return {n, {}, ChoiMatrix(n, CMatrix::Zero(n * n, n * n)), tol};
}

CVector MetricOperatorSpace::coordinates(const CMatrix& a) const {
  const CVector pa = choi_pinv_ * vec(a);
  CVector out(dim());
  for (int i = 0; i < dim(); ++i) out(i) = vec(basis_[i]).dot(pa);
  return out;
}

CMatrix MetricOperatorSpace::element(const CVector& coords) const {
  if (coords.size() != dim()) {
    throw DimensionMismatch("expected " + std::to_string(dim()) + " coordinates, got " +
                            std::to_string(coords.size()));
  }
  CMatrix out = CMatrix::Zero(n_, n_);
  for (int i = 0; i < dim(); ++i) out += coords(i) * basis_[i];
  return out;
}

std::optional<double> membership(const MetricOperatorSpace& e, const CMatrix& a,
                                 const Tolerances& tol) {
  if (a.rows() != e.n() || a.cols() != e.n()) {
    throw DimensionMismatch("operand size does not match the space");
  }
  const CVector w = vec(a);
  const double norm = w.norm();
  if (norm == 0.0) return 0.0;
  const CVector off = w - e.range() * (e.range().adjoint() * w);
  if (off.norm() > tol.eig_cut * norm) return std::nullopt;
  const double value = w.dot(e.choi_pinv() * w).real();
  return std::max(0.0, value);
}

std::optional<double> membership(const MetricOperatorSpace& e, const CMatrix& a) {
  return membership(e, a, e.tolerances());
}

Complex inner(const MetricOperatorSpace& e, const CMatrix& a, const CMatrix& b) {
  if (!membership(e, a)) throw NotMember("first operand is not in the space");
  if (!membership(e, b)) throw NotMember("second operand is not in the space");
  return vec(b).dot(e.choi_pinv() * vec(a));
}

IdentitySplit split_identity(const MetricOperatorSpace& e, const Tolerances& tol) {
  const int n = e.n();
  const std::optional<double> unit_norm = membership(e, CMatrix::Identity(n, n), tol);
  if (!unit_norm || *unit_norm <= 0.0) return {e, 0.0};
  const double c = 1.0 / *unit_norm;
  const CVector w = omega(n);
  const ChoiMatrix rest(n, e.choi().matrix() - c * w * w.adjoint());
  return {MetricOperatorSpace::from_choi(rest, tol), c};
}

}  // namespace cpsemi
