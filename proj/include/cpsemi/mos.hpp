#pragma once

#include <optional>
#include <vector>

#include "cpsemi/superop.hpp"

namespace cpsemi {

/// An operator subspace E of M_n(C) with its own Hilbert inner product, in
/// which a Kraus family of the associated CP map P_E is orthonormal.
///
/// Everything is carried by the Choi matrix J of P_E: E is unvec(range J) and
/// <a, b>_E = vec(b)* pinv(J) vec(a). Immutable after construction.
class MetricOperatorSpace {
 public:
  /// Space of a completely positive map. Throws NotCP.
  static MetricOperatorSpace from_cp_map(const SuperOperator& p, const Tolerances& tol = {});
  /// Space whose CP map has Choi matrix j. Throws NotPSD.
  static MetricOperatorSpace from_choi(const ChoiMatrix& j, const Tolerances& tol = {});
  /// Space declared by an orthonormal basis. The basis is kept as given;
  /// throws DimensionMismatch if the operators are linearly dependent.
  static MetricOperatorSpace from_orthonormal_basis(int n, std::vector<CMatrix> basis,
                                                    const Tolerances& tol = {});
  /// The zero space {0} of M_n.
  static MetricOperatorSpace zero(int n, const Tolerances& tol = {});

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const ChoiMatrix& choi() const { return choi_; }
  const CMatrix& choi_pinv() const { return choi_pinv_; }
  /// Orthonormal (Euclidean) basis of vec(E), one column per dimension.
  const CMatrix& range() const { return range_; }
  const Tolerances& tolerances() const { return tol_; }

  /// P_E(x) = sum_k v_k x v_k*.
  SuperOperator cp_map() const { return choi_to_superop(choi_); }

  /// Coordinates <a, v_i>_E of a in the stored basis.
  CVector coordinates(const CMatrix& a) const;
  /// sum_i coords_i v_i.
  CMatrix element(const CVector& coords) const;

 private:
  MetricOperatorSpace(int n, std::vector<CMatrix> basis, ChoiMatrix choi, const Tolerances& tol);

  int n_ = 0;
  std::vector<CMatrix> basis_;
  ChoiMatrix choi_;
  CMatrix choi_pinv_;
  CMatrix range_;
  Tolerances tol_;
};

/// <a, a>_E when a lies in E, which is also the least c >= 0 for which
/// x -> c P_E(x) - a x a* is completely positive; nullopt when a is not in E.
std::optional<double> membership(const MetricOperatorSpace& e, const CMatrix& a,
                                 const Tolerances& tol);
std::optional<double> membership(const MetricOperatorSpace& e, const CMatrix& a);

/// <a, b>_E, linear in a and conjugate-linear in b. Throws NotMember.
Complex inner(const MetricOperatorSpace& e, const CMatrix& a, const CMatrix& b);

struct IdentitySplit {
  MetricOperatorSpace e0;  ///< orthogonal complement of C1 inside E
  double c = 0.0;          ///< P_E = P_E0 + c * identity
};

/// Splits off the identity component of E. When 1 is not in E, e0 = E, c = 0.
IdentitySplit split_identity(const MetricOperatorSpace& e, const Tolerances& tol = {});

}  // namespace cpsemi
