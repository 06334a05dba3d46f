#pragma once

#include <span>
#include <vector>

#include "cpsemi/numerics.hpp"

namespace cpsemi {

/// Column-stacking vectorization: vec(x)[i*n + k] = x(k, i).
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, int n);

/// A linear map on M_n(C), stored as the n^2 x n^2 matrix acting on vec(x).
///
/// With the column-stacking convention, x -> a x b has matrix kron(b^T, a).
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(int n, CMatrix mat);

  static SuperOperator identity(int n);
  static SuperOperator zero(int n);
  /// x -> a x b
  static SuperOperator sandwich(const CMatrix& a, const CMatrix& b);
  /// x -> v x v*
  static SuperOperator conjugation(const CMatrix& v);
  /// x -> a x + x b
  static SuperOperator left_right(const CMatrix& a, const CMatrix& b);
  /// x -> x^T
  static SuperOperator transpose(int n);
  /// x -> sum_m v_m x v_m*
  static SuperOperator from_kraus(std::span<const CMatrix> kraus, int n);

  int dim() const { return n_; }
  const CMatrix& matrix() const { return mat_; }

  CMatrix operator()(const CMatrix& x) const;

  SuperOperator& operator+=(const SuperOperator& other);
  SuperOperator& operator-=(const SuperOperator& other);
  friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) { return a += b; }
  friend SuperOperator operator-(SuperOperator a, const SuperOperator& b) { return a -= b; }
  friend SuperOperator operator*(Complex s, const SuperOperator& a) { return {a.n_, s * a.mat_}; }
  friend SuperOperator operator*(double s, const SuperOperator& a) { return {a.n_, s * a.mat_}; }
  /// Composition (a * b)(x) = a(b(x)).
  friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b);

 private:
  int n_ = 0;
  CMatrix mat_;
};

/// Throws DimensionMismatch when x is not n x n.
CMatrix apply(const SuperOperator& p, const CMatrix& x);

/// J = sum_ij E_ij (x) P(E_ij); block (i, j) holds P(E_ij).
///
/// For P(x) = v x v* this is exactly vec(v) vec(v)*.
class ChoiMatrix {
 public:
  ChoiMatrix() = default;
  ChoiMatrix(int n, CMatrix j);

  int dim() const { return n_; }
  const CMatrix& matrix() const { return j_; }

 private:
  int n_ = 0;
  CMatrix j_;
};

ChoiMatrix choi_of(const SuperOperator& p);
SuperOperator choi_to_superop(const ChoiMatrix& j);

/// Kraus family from the eigendecomposition of J: each eigenpair (mu, u) with
/// mu above the cut gives sqrt(mu) unvec(u). The largest-magnitude entry of
/// every operator is made real positive. Throws NotPSD.
std::vector<CMatrix> kraus_of(const ChoiMatrix& j, const Tolerances& tol = {});

/// Smallest eigenvalue of the (Hermitian part of the) Choi matrix.
double choi_min_eigenvalue(const SuperOperator& p);

bool is_completely_positive(const SuperOperator& p, const Tolerances& tol = {});
bool is_hermiticity_preserving(const SuperOperator& p, const Tolerances& tol = {});
bool is_unital(const SuperOperator& p, const Tolerances& tol = {});

/// vec(1) for M_n.
CVector omega(int n);

}  // namespace cpsemi
