#include "cpsemi/sampling.hpp"

#include <cmath>
#include <vector>

namespace cpsemi {

CMatrix random_complex_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  // Fill in a fixed order; Eigen's NullaryExpr evaluation order is unspecified.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

CMatrix random_hermitian(int n, Rng& rng) {
  const CMatrix g = random_complex_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_unitary(int n, Rng& rng) {
  const CMatrix g = random_complex_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

SuperOperator random_cp_map(int n, int kraus_count, Rng& rng, double scale) {
  SuperOperator out = SuperOperator::zero(n);
  for (int m = 0; m < kraus_count; ++m) {
    out += SuperOperator::conjugation(scale * random_complex_matrix(n, n, rng) / std::sqrt(n));
  }
  return out;
}

SuperOperator random_ccp_generator(int n, GeneratorKind kind, Rng& rng) {
  const CMatrix h = random_hermitian(n, rng);
  const Complex i(0.0, 1.0);
  if (kind == GeneratorKind::automorphism) {
    return SuperOperator::left_right(i * h, -i * h);
  }
  std::uniform_int_distribution<int> count_dist(1, n * n + 1);
  const int count = count_dist(rng);
  std::vector<CMatrix> kraus;
  for (int m = 0; m < count; ++m) {
    kraus.push_back(random_complex_matrix(n, n, rng) / std::sqrt(static_cast<double>(n * count)));
  }
  CMatrix k;
  if (kind == GeneratorKind::unital) {
    CMatrix sum = CMatrix::Zero(n, n);
    for (const CMatrix& v : kraus) sum += v * v.adjoint();
    k = i * h - 0.5 * sum;
  } else {
    k = 0.5 * random_complex_matrix(n, n, rng);
  }
  return SuperOperator::from_kraus(kraus, n) + SuperOperator::left_right(k, k.adjoint());
}

SuperOperator random_hermiticity_preserving_map(int n, bool ccp, Rng& rng) {
  const int nn = n * n;
  const CVector w = omega(n) / std::sqrt(static_cast<double>(n));
  // Orthonormal basis of w^perp: Householder-reflect a random unitary frame.
  const CMatrix u = random_unitary(nn, rng);
  CMatrix frame(nn, nn);
  frame.col(0) = w;
  frame.rightCols(nn - 1) = u.leftCols(nn - 1);
  Eigen::HouseholderQR<CMatrix> qr(frame);
  const CMatrix q = qr.householderQ();
  const CMatrix perp = q.rightCols(nn - 1);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RVector spectrum(nn - 1);
  for (int m = 0; m < nn - 1; ++m) {
    spectrum(m) = unit(rng) < 0.2 ? 0.0 : 0.05 + 0.95 * unit(rng);
  }
  if (!ccp) {
    std::uniform_int_distribution<int> pick(0, nn - 2);
    spectrum(pick(rng)) = -(0.05 + 0.95 * unit(rng));
  }
  CMatrix j = perp * spectrum.cast<Complex>().asDiagonal() * perp.adjoint();
  const CVector y = 0.5 * random_complex_matrix(nn, 1, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  const CVector o = omega(n);
  j += y * o.adjoint() + o * y.adjoint() + normal(rng) * o * o.adjoint();
  return choi_to_superop(ChoiMatrix(n, j));
}

}  // namespace cpsemi
