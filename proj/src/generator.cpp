#include "cpsemi/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpsemi/errors.hpp"
#include "cpsemi/symbol.hpp"

namespace cpsemi {

SuperOperator GklsForm::rebuild() const {
  return space.cp_map() + SuperOperator::left_right(k, k.adjoint());
}

SuperOperator gkls_map(std::span<const CMatrix> kraus, const CMatrix& k) {
  const auto n = static_cast<int>(k.rows());
  return SuperOperator::from_kraus(kraus, n) + SuperOperator::left_right(k, k.adjoint());
}

SuperOperator hamiltonian_lindblad(const CMatrix& h, std::span<const CMatrix> ops) {
  CMatrix k = Complex(0.0, 1.0) * h;
  for (const CMatrix& v : ops) k -= 0.5 * v * v.adjoint();
  return gkls_map(ops, k);
}

bool is_unital_generator(const SuperOperator& l, const Tolerances& tol) {
  const int n = l.dim();
  return l(CMatrix::Identity(n, n)).norm() <= tol.residual * std::max(1.0, l.matrix().norm());
}

namespace {

// Real least squares for k in  I (x) k + conj(k) (x) I = target.
CMatrix solve_drift(const CMatrix& target, int n) {
  const int nn = n * n;
  const Eigen::Index rows = static_cast<Eigen::Index>(nn) * nn;
  const CMatrix id = CMatrix::Identity(n, n);
  RMatrix system(2 * rows, 2 * nn);
  for (int c = 0; c < nn; ++c) {
    const CMatrix e = unvec(CVector::Unit(nn, c), n);
    const CMatrix left = kron(id, e);
    const CMatrix right = kron(e, id);
    const CMatrix re_col = left + right;
    const CMatrix im_col = Complex(0.0, 1.0) * (left - right);
    const Eigen::Map<const CVector> re_flat(re_col.data(), rows);
    const Eigen::Map<const CVector> im_flat(im_col.data(), rows);
    system.col(c) << re_flat.real(), re_flat.imag();
    system.col(nn + c) << im_flat.real(), im_flat.imag();
  }
  const Eigen::Map<const CVector> flat(target.data(), rows);
  RVector rhs(2 * rows);
  rhs << flat.real(), flat.imag();
  const LstsqResult<RVector> sol = lstsq(system, rhs);
  CVector kvec(nn);
  for (int c = 0; c < nn; ++c) kvec(c) = Complex(sol.x(c), sol.x(nn + c));
  return unvec(kvec, n);
}

}  // namespace

GklsForm decompose(const SuperOperator& l, const Tolerances& tol) {
  const int n = l.dim();
  const CcpVerdict verdict = conditional_cp_verdict(l, tol);
  if (!verdict.hermiticity_preserving) {
    throw NotHermiticityPreserving("generator does not commute with the adjoint");
  }
  if (!verdict.conditionally_cp) {
    throw NotCCP("projected Choi matrix has eigenvalue " + std::to_string(verdict.min_eigenvalue));
  }

  // Clamp the projected Choi spectrum; every kept eigenvector is orthogonal
  // to vec(1), so the resulting Kraus operators are traceless.
  const HermitianEig eig = hermitian_eig(projected_choi(l), tol);
  const double cut = tol.eig_cut * tolerance_scale(choi_of(l).matrix());
  CMatrix clamped = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index m = 0; m < eig.values.size() && eig.values(m) > cut; ++m) {
    clamped += eig.values(m) * eig.vectors.col(m) * eig.vectors.col(m).adjoint();
  }
  MetricOperatorSpace space = eig.values.size() > 0 && eig.values(0) > cut
                                  ? MetricOperatorSpace::from_choi(ChoiMatrix(n, clamped), tol)
                                  : MetricOperatorSpace::zero(n, tol);

  CMatrix k = solve_drift(l.matrix() - space.cp_map().matrix(), n);
  k -= Complex(0.0, k.trace().imag() / n) * CMatrix::Identity(n, n);

  GklsForm out{std::move(space), std::move(k), 0.0};
  out.residual = (out.rebuild().matrix() - l.matrix()).norm();
  return out;
}

int rank(const SuperOperator& l, const Tolerances& tol) { return decompose(l, tol).rank(); }

SuperOperator gauge_shift(const GklsForm& d, const CVector& lambda, Complex c) {
  const int n = d.n();
  if (lambda.size() != d.rank()) {
    throw DimensionMismatch("gauge shift needs one scalar per basis element");
  }
  const CMatrix id = CMatrix::Identity(n, n);
  SuperOperator q = c.real() * SuperOperator::identity(n);
  for (int m = 0; m < d.rank(); ++m) {
    q += SuperOperator::conjugation(d.space.basis()[m] + lambda(m) * id);
  }
  return q;
}

std::optional<GaugeData> extract_gauge(const MetricOperatorSpace& e1, const CMatrix& k1,
                                       const MetricOperatorSpace& e2, const CMatrix& k2,
                                       const Tolerances& tol) {
  const int n = e1.n();
  const int d = e1.dim();
  if (e2.n() != n || e2.dim() != d) return std::nullopt;
  CMatrix columns(n * n, d + 1);
  for (int i = 0; i < d; ++i) columns.col(i) = vec(e2.basis()[i]);
  columns.col(d) = omega(n);

  GaugeData out;
  out.theta = CMatrix::Zero(d, d);
  CVector f(d);
  for (int j = 0; j < d; ++j) {
    const CVector target = vec(e1.basis()[j]);
    const LstsqResult<CVector> sol = lstsq(columns, target);
    if (sol.residual > tol.eig_cut * std::max(1.0, target.norm())) return std::nullopt;
    out.theta.col(j) = sol.x.head(d);
    f(j) = sol.x(d);
  }
  out.unitarity_defect = (out.theta.adjoint() * out.theta - CMatrix::Identity(d, d)).norm();
  // f_j = sum_i theta_ij conj(w_i)  =>  w = theta conj(f) for unitary theta.
  const CVector v2_coords = out.theta * f.conjugate();
  out.v2 = e2.element(v2_coords);
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix defect = k2 - k1 - out.v2 - 0.5 * v2_coords.squaredNorm() * id;
  const Complex s = defect.trace() / static_cast<double>(n);
  out.c = s.imag();
  out.relation_residual = (defect - s * id).norm() + std::abs(s.real());
  return out;
}

SameGeneratorResult same_generator(const GklsForm& d1, const GklsForm& d2,
                                   const Tolerances& tol) {
  SameGeneratorResult out;
  if (d1.n() != d2.n()) return out;
  const CMatrix m1 = d1.rebuild().matrix();
  const CMatrix m2 = d2.rebuild().matrix();
  out.distance = (m1 - m2).norm();
  out.same = out.distance <= tol.residual * std::max({1.0, m1.norm(), m2.norm()});
  if (out.same) out.gauge = extract_gauge(d1.space, d1.k, d2.space, d2.k, tol);
  return out;
}

double domination_margin(const SuperOperator& l1, const SuperOperator& l2, double t) {
  const CMatrix diff = expm(t * l2.matrix()) - expm(t * l1.matrix());
  return choi_min_eigenvalue(SuperOperator(l1.dim(), diff));
}

bool dominates(const SuperOperator& l1, const SuperOperator& l2, std::span<const double> ts,
               const Tolerances& tol) {
  for (const double t : ts) {
    const SuperOperator p2(l2.dim(), expm(t * l2.matrix()));
    const double scale = tolerance_scale(choi_of(p2).matrix());
    if (domination_margin(l1, l2, t) < -tol.psd_slack * scale) return false;
  }
  return true;
}

std::optional<DriftSplit> split_k(const GklsForm& d, const CMatrix& kcand, const Tolerances& tol) {
  const int n = d.n();
  const int dim = d.rank();
  CMatrix columns(n * n, dim + 1);
  for (int i = 0; i < dim; ++i) columns.col(i) = vec(d.space.basis()[i]);
  columns.col(dim) = omega(n);
  const CVector target = vec(kcand);
  const LstsqResult<CVector> sol = lstsq(columns, target);
  if (sol.residual > tol.eig_cut * std::max(1.0, target.norm())) return std::nullopt;

  DriftSplit out;
  const CVector coords = sol.x.head(dim);
  out.v = d.space.element(coords);
  out.c = sol.x(dim);
  out.v_norm2 = coords.squaredNorm();
  out.completely_positive =
      2.0 * out.c.real() >= out.v_norm2 - tol.psd_slack * std::max(1.0, out.v_norm2);
  return out;
}

}  // namespace cpsemi
