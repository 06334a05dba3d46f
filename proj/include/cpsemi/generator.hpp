#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cpsemi/mos.hpp"

namespace cpsemi {

/// Canonical decomposition L(x) = P_E(x) + k x + x k* of a bounded generator
/// of a CP semigroup.
///
/// Every basis operator of E is traceless, so E contains no nonzero multiple
/// of 1, and k is normalized by Im tr k = 0. With those two conventions the
/// pair (E, k) is unique up to a unitary change of basis in E.
struct GklsForm {
  MetricOperatorSpace space;
  CMatrix k;
  double residual = 0.0;  ///< |mat(rebuild) - mat(L)|_F

  int n() const { return space.n(); }
  int rank() const { return space.dim(); }
  /// x -> P_E(x) + k x + x k*
  SuperOperator rebuild() const;
};

/// x -> sum_m v_m x v_m* + k x + x k*, no normalization applied.
SuperOperator gkls_map(std::span<const CMatrix> kraus, const CMatrix& k);

/// Unital generator from a Hamiltonian h and jump operators v_m:
///   k = i h - 1/2 sum_m v_m v_m*,  so L(1) = sum v v* + k + k* = 0.
/// This is the Heisenberg-picture convention (v v*, not v* v).
SuperOperator hamiltonian_lindblad(const CMatrix& h, std::span<const CMatrix> ops);

/// L(1) = 0 within tol.residual, i.e. every exp(tL) is unital.
bool is_unital_generator(const SuperOperator& l, const Tolerances& tol = {});

/// Throws NotHermiticityPreserving or NotCCP.
GklsForm decompose(const SuperOperator& l, const Tolerances& tol = {});

/// dim E of the canonical decomposition.
int rank(const SuperOperator& l, const Tolerances& tol = {});

/// Q(x) = sum_k (v_k + lambda_k 1) x (v_k + lambda_k 1)* + Re(c) x.
SuperOperator gauge_shift(const GklsForm& d, const CVector& lambda, Complex c);

/// Gauge data relating two decompositions (E1, k1), (E2, k2) of one generator:
/// v = theta(v) + f(v) 1 on E1, f(v) = <theta(v), v2>_E2 and
/// k2 = k1 + v2 + (1/2 <v2, v2> + i c) 1.
struct GaugeData {
  CMatrix theta;       ///< matrix of theta in the two stored bases
  CMatrix v2;          ///< element of E2
  double c = 0.0;      ///< real phase constant
  double unitarity_defect = 0.0;  ///< |theta* theta - 1|_F
  double relation_residual = 0.0; ///< defect of the k2 relation
};

/// nullopt when E1 + C1 != E2 + C1.
std::optional<GaugeData> extract_gauge(const MetricOperatorSpace& e1, const CMatrix& k1,
                                       const MetricOperatorSpace& e2, const CMatrix& k2,
                                       const Tolerances& tol = {});

struct SameGeneratorResult {
  bool same = false;
  double distance = 0.0;           ///< |mat(L1) - mat(L2)|_F
  std::optional<GaugeData> gauge;  ///< diagnostic, present when same
};

/// Compares rebuilt superoperator matrices within tol.residual.
SameGeneratorResult same_generator(const GklsForm& d1, const GklsForm& d2,
                                   const Tolerances& tol = {});

/// Smallest Choi eigenvalue of exp(t L2) - exp(t L1).
double domination_margin(const SuperOperator& l1, const SuperOperator& l2, double t);

/// exp(t L2) - exp(t L1) completely positive at every sampled t.
bool dominates(const SuperOperator& l1, const SuperOperator& l2, std::span<const double> ts,
               const Tolerances& tol = {});

struct DriftSplit {
  CMatrix v;                  ///< element of E
  Complex c;                  ///< kcand = v + c 1
  double v_norm2 = 0.0;       ///< <v, v>_E
  bool completely_positive = false;  ///< c + conj(c) >= <v, v>_E
};

/// Splits a candidate drift as kcand = v + c 1 with v in E; nullopt when kcand
/// is not in E + C1. The flag decides complete positivity of
/// x -> P_E(x) + kcand x + x kcand*.
std::optional<DriftSplit> split_k(const GklsForm& d, const CMatrix& kcand,
                                  const Tolerances& tol = {});

}  // namespace cpsemi
