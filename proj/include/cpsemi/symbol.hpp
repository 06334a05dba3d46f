#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cpsemi/superop.hpp"

namespace cpsemi {

/// sigma_L(dx dy) = L(xy) - x L(y) - L(x) y + x L(1) y.
CMatrix symbol(const SuperOperator& l, const CMatrix& x, const CMatrix& y);

/// The symbol evaluated on all pairs of matrix units (E_ij, E_kl). By
/// bilinearity this determines sigma_L on every pair (x, y).
class SymbolTable {
 public:
  explicit SymbolTable(const SuperOperator& l);

  int dim() const { return n_; }
  const CMatrix& at(int i, int j, int k, int l) const;
  /// sigma_L(dx dy) reassembled from the table.
  CMatrix evaluate(const CMatrix& x, const CMatrix& y) const;
  /// Largest Frobenius norm over all entries.
  double max_norm() const;

 private:
  int n_;
  std::vector<CMatrix> values_;
};

SymbolTable symbol_table(const SuperOperator& l);

/// Entrywise comparison of the two symbol tables within tol.residual.
bool symbols_equal(const SuperOperator& l1, const SuperOperator& l2, const Tolerances& tol = {});

/// L(x) = a x + x b.
struct LinearForm {
  CMatrix a;
  CMatrix b;
  double residual = 0.0;
};

/// Present exactly when the symbol of L vanishes. The (a + s1, b - s1)
/// ambiguity is fixed by tr(a) real and Re tr(a) = Re tr(b); for
/// Hermiticity-preserving L this gives b = a*.
std::optional<LinearForm> recover_linear_form(const SuperOperator& l, const Tolerances& tol = {});

/// P_perp J(L) P_perp with P_perp the projection onto vec(1)^perp.
CMatrix projected_choi(const SuperOperator& l);

struct CcpVerdict {
  bool conditionally_cp = false;
  bool hermiticity_preserving = false;
  double min_eigenvalue = 0.0;    ///< of the projected Choi matrix
  std::optional<CVector> witness;  ///< eigenvector with negative eigenvalue
};

/// Conditional complete positivity: L Hermiticity-preserving and the
/// projected Choi matrix PSD.
CcpVerdict conditional_cp_verdict(const SuperOperator& l, const Tolerances& tol = {});
bool is_conditionally_cp(const SuperOperator& l, const Tolerances& tol = {});

/// sum_{j,k} a_j* L(x_j* x_k) a_k.
CMatrix constrained_form(const SuperOperator& l, std::span<const CMatrix> xs,
                         std::span<const CMatrix> as);

/// Positivity of constrained_form under sum_k x_k a_k = 0. Throws
/// ConstraintViolated when the constraint fails.
bool constrained_positivity_holds(const SuperOperator& l, std::span<const CMatrix> xs,
                                  std::span<const CMatrix> as, const Tolerances& tol = {});

struct ConstrainedTuple {
  std::vector<CMatrix> xs;
  std::vector<CMatrix> as;
  double min_eigenvalue = 0.0;  ///< of constrained_form
};

/// Randomized search for a tuple violating constrained positivity. Each trial
/// draws xs with i.i.d. complex normal entries and takes as from an
/// orthonormal basis of the null space of a -> sum_k x_k a_k, rotated to the
/// most negative directions of the compressed form.
std::optional<ConstrainedTuple> find_constrained_witness(const SuperOperator& l, int trials,
                                                         std::uint64_t seed,
                                                         const Tolerances& tol = {});

}  // namespace cpsemi
