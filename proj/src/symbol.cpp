#include "cpsemi/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpsemi/errors.hpp"
#include "cpsemi/sampling.hpp"

namespace cpsemi {

CMatrix symbol(const SuperOperator& l, const CMatrix& x, const CMatrix& y) {
  const int n = l.dim();
  if (x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n) {
    throw DimensionMismatch("symbol operands must be " + std::to_string(n) + "x" +
                            std::to_string(n));
  }
  const CMatrix l1 = l(CMatrix::Identity(n, n));
  return l(x * y) - x * l(y) - l(x) * y + x * l1 * y;
}

namespace {

CMatrix unit_matrix_ij(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

SymbolTable::SymbolTable(const SuperOperator& l) : n_(l.dim()) {
  const int n = n_;
  const CMatrix l1 = l(CMatrix::Identity(n, n));
  std::vector<CMatrix> images;
  images.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) images.push_back(l(unit_matrix_ij(n, i, j)));
  }
  values_.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMatrix eij = unit_matrix_ij(n, i, j);
      const CMatrix& lij = images[i * n + j];
      for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
          const CMatrix ekm = unit_matrix_ij(n, k, m);
          // E_ij E_km = delta_jk E_im
          CMatrix value = -eij * images[k * n + m] - lij * ekm + eij * l1 * ekm;
          if (j == k) value += images[i * n + m];
          values_.push_back(std::move(value));
        }
      }
    }
  }
}

const CMatrix& SymbolTable::at(int i, int j, int k, int l) const {
  const int n = n_;
  return values_[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
}

CMatrix SymbolTable::evaluate(const CMatrix& x, const CMatrix& y) const {
  const int n = n_;
  CMatrix out = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (x(i, j) == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) out += x(i, j) * y(k, l) * at(i, j, k, l);
      }
    }
  }
  return out;
}

double SymbolTable::max_norm() const {
  double out = 0.0;
  for (const CMatrix& v : values_) out = std::max(out, v.norm());
  return out;
}

SymbolTable symbol_table(const SuperOperator& l) { return SymbolTable(l); }

bool symbols_equal(const SuperOperator& l1, const SuperOperator& l2, const Tolerances& tol) {
  if (l1.dim() != l2.dim()) return false;
  const double scale = std::max({1.0, l1.matrix().norm(), l2.matrix().norm()});
  return symbol_table(l1 - l2).max_norm() <= tol.residual * scale;
}

std::optional<LinearForm> recover_linear_form(const SuperOperator& l, const Tolerances& tol) {
  const int n = l.dim();
  const int nn = n * n;
  const double scale = std::max(1.0, l.matrix().norm());
  if (symbol_table(l).max_norm() > tol.residual * scale) return std::nullopt;

  // Columns: mat(x -> E_pq x) for vec index of E_pq, then mat(x -> x E_pq).
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix system(nn * nn, 2 * nn);
  for (int c = 0; c < nn; ++c) {
    const CMatrix e = unvec(CVector::Unit(nn, c), n);
    const CMatrix left = kron(id, e);
    const CMatrix right = kron(e.transpose(), id);
    system.col(c) = Eigen::Map<const CVector>(left.data(), left.size());
    system.col(nn + c) = Eigen::Map<const CVector>(right.data(), right.size());
  }
  const CVector target = Eigen::Map<const CVector>(l.matrix().data(), l.matrix().size());
  const LstsqResult<CVector> sol = lstsq(system, target);

  LinearForm out;
  out.a = unvec(sol.x.head(nn), n);
  out.b = unvec(sol.x.tail(nn), n);
  // The minimum-norm solution already has tr a = tr b; shift by i Im(tr a)/n.
  const Complex shift(0.0, -out.a.trace().imag() / n);
  out.a += shift * id;
  out.b -= shift * id;
  if (is_hermiticity_preserving(l, tol)) {
    out.a = 0.5 * (out.a + out.b.adjoint());
    out.b = out.a.adjoint();
  }
  out.residual = (SuperOperator::left_right(out.a, out.b).matrix() - l.matrix()).norm();
  if (out.residual > tol.residual * scale) return std::nullopt;
  return out;
}

CMatrix projected_choi(const SuperOperator& l) {
  const int n = l.dim();
  const CVector o = omega(n);
  const CMatrix perp =
      CMatrix::Identity(n * n, n * n) - (o * o.adjoint()) / static_cast<double>(n);
  const CMatrix jp = perp * choi_of(l).matrix() * perp;
  return 0.5 * (jp + jp.adjoint());
}

CcpVerdict conditional_cp_verdict(const SuperOperator& l, const Tolerances& tol) {
  CcpVerdict out;
  out.hermiticity_preserving = is_hermiticity_preserving(l, tol);
  const CMatrix jp = projected_choi(l);
  const HermitianEig eig = hermitian_eig(jp, tol);
  const Eigen::Index last = eig.values.size() - 1;
  out.min_eigenvalue = eig.values(last);
  const double scale = tolerance_scale(choi_of(l).matrix());
  const bool psd = out.min_eigenvalue >= -tol.psd_slack * scale;
  out.conditionally_cp = out.hermiticity_preserving && psd;
  if (!psd) out.witness = eig.vectors.col(last);
  return out;
}

bool is_conditionally_cp(const SuperOperator& l, const Tolerances& tol) {
  return conditional_cp_verdict(l, tol).conditionally_cp;
}

CMatrix constrained_form(const SuperOperator& l, std::span<const CMatrix> xs,
                         std::span<const CMatrix> as) {
  if (xs.size() != as.size()) throw DimensionMismatch("xs and as differ in length");
  const int n = l.dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      out += as[j].adjoint() * l(xs[j].adjoint() * xs[k]) * as[k];
    }
  }
  return out;
}

bool constrained_positivity_holds(const SuperOperator& l, std::span<const CMatrix> xs,
                                  std::span<const CMatrix> as, const Tolerances& tol) {
  if (xs.size() != as.size()) throw DimensionMismatch("xs and as differ in length");
  const int n = l.dim();
  CMatrix constraint = CMatrix::Zero(n, n);
  double constraint_scale = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    constraint += xs[k] * as[k];
    constraint_scale += xs[k].norm() * as[k].norm();
  }
  if (constraint.norm() > tol.residual * std::max(1.0, constraint_scale)) {
    throw ConstraintViolated("|sum x_k a_k| = " + std::to_string(constraint.norm()));
  }
  double scale = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      scale += as[j].norm() * l(xs[j].adjoint() * xs[k]).norm() * as[k].norm();
    }
  }
  const CMatrix s = constrained_form(l, xs, as);
  return min_eigenvalue(s) >= -tol.psd_slack * std::max(scale, 1e-300);
}

std::optional<ConstrainedTuple> find_constrained_witness(const SuperOperator& l, int trials,
                                                         std::uint64_t seed,
                                                         const Tolerances& tol) {
  const int n = l.dim();
  // n^2 pairs make the compressed form see every traceless direction.
  const int count = n * n;
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<CMatrix> xs;
    CMatrix row(n, count * n);
    for (int k = 0; k < count; ++k) {
      xs.push_back(random_complex_matrix(n, n, rng));
      row.middleCols(k * n, n) = xs.back();
    }
    const CMatrix z = null_space(row, tol);
    CMatrix block(count * n, count * n);
    for (int j = 0; j < count; ++j) {
      for (int k = 0; k < count; ++k) {
        block.block(j * n, k * n, n, n) = l(xs[j].adjoint() * xs[k]);
      }
    }
    const CMatrix compressed = z.adjoint() * block * z;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (compressed + compressed.adjoint()));
    // Columns of the stacked a_k: the n most negative directions of the form.
    const CMatrix stacked = z * es.eigenvectors().leftCols(n);
    std::vector<CMatrix> as;
    for (int k = 0; k < count; ++k) as.push_back(stacked.middleRows(k * n, n));
    if (!constrained_positivity_holds(l, xs, as, tol)) {
      ConstrainedTuple out{std::move(xs), std::move(as), 0.0};
      out.min_eigenvalue = min_eigenvalue(constrained_form(l, out.xs, out.as));
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace cpsemi
