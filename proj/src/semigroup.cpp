#include "cpsemi/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cpsemi/errors.hpp"
#include "cpsemi/sampling.hpp"

namespace cpsemi {

SuperOperator evolve(const SuperOperator& l, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve: t must be nonnegative");
  return {l.dim(), expm(t * l.matrix())};
}

MetricOperatorSpace space_at(const SuperOperator& l, double t, const Tolerances& tol) {
  if (!(t > 0.0)) throw std::invalid_argument("space_at: t must be positive");
  return MetricOperatorSpace::from_cp_map(evolve(l, t), tol);
}

bool product_system_check(const SuperOperator& l, double s, double t, const Tolerances& tol) {
  const MetricOperatorSpace es = space_at(l, s, tol);
  const MetricOperatorSpace et = space_at(l, t, tol);
  const MetricOperatorSpace est = space_at(l, s + t, tol);
  const int n = l.dim();

  CMatrix products(n * n, es.dim() * et.dim());
  int col = 0;
  for (const CMatrix& x : es.basis()) {
    for (const CMatrix& y : et.basis()) products.col(col++) = vec(x * y);
  }
  if (rank_tol(products, tol) != est.dim()) return false;

  // Products inside E(s + t) ...
  const CMatrix& target = est.range();
  const CMatrix off = products - target * (target.adjoint() * products);
  if (off.norm() > tol.eig_cut * std::max(1.0, products.norm())) return false;
  // ... and E(s + t) inside their span.
  const CMatrix span = range_basis(products, tol);
  const CMatrix back = target - span * (span.adjoint() * target);
  return back.norm() <= tol.eig_cut * std::max(1.0, target.norm());
}

Unit make_unit(std::shared_ptr<const GklsForm> owner, Complex c, CVector v_coords) {
  if (!owner) throw std::invalid_argument("make_unit: null owner");
  if (v_coords.size() != owner->rank()) {
    throw DimensionMismatch("unit needs " + std::to_string(owner->rank()) +
                            " coordinates, got " + std::to_string(v_coords.size()));
  }
  return Unit{c, std::move(v_coords), std::move(owner)};
}

CMatrix unit_matrix(const Unit& u, double t) {
  return std::exp(u.c * t) * expm(t * (u.v() + u.owner->k));
}

double unit_alpha(const Unit& u) { return u.v_coords.squaredNorm() + 2.0 * u.c.real(); }

double unit_margin(const SuperOperator& l, const Unit& u, double t, double alpha) {
  const int n = l.dim();
  const CMatrix dominant = std::exp(alpha * t) * expm(t * l.matrix());
  const CMatrix tt = unit_matrix(u, t);
  const SuperOperator diff(n, dominant - SuperOperator::conjugation(tt).matrix());
  const double scale = tolerance_scale(choi_of(SuperOperator(n, dominant)).matrix());
  return choi_min_eigenvalue(diff) / scale;
}

bool verify_unit(const SuperOperator& l, const Unit& u, std::span<const double> ts,
                 const Tolerances& tol) {
  const double alpha = unit_alpha(u);
  for (const double t : ts) {
    if (unit_margin(l, u, t, alpha) < -tol.psd_slack) return false;
    if (!membership(space_at(l, t, tol), unit_matrix(u, t), tol)) return false;
  }
  return true;
}

Complex covariance(const Unit& u1, const Unit& u2) {
  if (u1.owner != u2.owner) throw OwnerMismatch("units belong to different decompositions");
  return u1.c + std::conj(u2.c) + u2.v_coords.dot(u1.v_coords);
}

Complex covariance_estimate(const SuperOperator& l, const Unit& u1, const Unit& u2, double t,
                            int m, const Tolerances& tol) {
  if (!(t > 0.0) || m < 1) throw std::invalid_argument("covariance_estimate: need t > 0, m >= 1");
  const double delta = t / m;
  const MetricOperatorSpace e = space_at(l, delta, tol);
  const CMatrix t1 = unit_matrix(u1, delta);
  const CMatrix t2 = unit_matrix(u2, delta);
  if (!membership(e, t1, tol) || !membership(e, t2, tol)) {
    throw NotMember("unit value at t/m = " + std::to_string(delta) +
                    " is not in the space of P_{t/m}");
  }
  const Complex z = vec(t2).dot(e.choi_pinv() * vec(t1));
  if (std::abs(z) < 1e-300 || std::abs(std::arg(z)) > std::numbers::pi - 1e-6) {
    throw LogBranch("inner product " + std::to_string(z.real()) + " + " +
                    std::to_string(z.imag()) + "i is on the branch cut; increase m");
  }
  return (static_cast<double>(m) / t) * std::log(z);
}

int index(const SuperOperator& l, const Tolerances& tol) { return rank(l, tol); }

CovarianceKernel covariance_kernel(std::vector<Unit> sample) {
  const auto size = static_cast<Eigen::Index>(sample.size());
  CMatrix matrix(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) matrix(i, j) = covariance(sample[i], sample[j]);
  }
  return {std::move(sample), std::move(matrix)};
}

CMatrix centered_gram(const CovarianceKernel& kernel) {
  const Eigen::Index size = kernel.matrix.rows();
  if (size < 2) throw std::invalid_argument("centered_gram: need at least two units");
  const CMatrix& c = kernel.matrix;
  CMatrix g(size - 1, size - 1);
  for (Eigen::Index i = 1; i < size; ++i) {
    for (Eigen::Index j = 1; j < size; ++j) {
      g(i - 1, j - 1) = c(i, j) - c(i, 0) - c(0, j) + c(0, 0);
    }
  }
  return g;
}

int gram_dimension(const CovarianceKernel& kernel, const Tolerances& tol) {
  return rank_tol(centered_gram(kernel), tol);
}

std::vector<Unit> sample_units(const std::shared_ptr<const GklsForm>& owner, int count,
                               std::uint64_t seed) {
  const Complex grid[] = {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 1.0)};
  const int dim = owner->rank();
  Rng rng(seed);
  std::vector<Unit> out;
  for (int i = 0; i < count; ++i) {
    CVector coords = i < dim ? CVector(CVector::Unit(dim, i))
                             : CVector(random_complex_matrix(dim, 1, rng).col(0));
    out.push_back(make_unit(owner, grid[i % 3], std::move(coords)));
  }
  return out;
}

}  // namespace cpsemi
