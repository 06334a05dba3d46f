#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cpsemi/generator.hpp"

namespace cpsemi {

/// P_t = exp(t L). Throws std::invalid_argument for t < 0.
SuperOperator evolve(const SuperOperator& l, double t);

/// Metric operator space of P_t, t > 0. Throws NotCP.
MetricOperatorSpace space_at(const SuperOperator& l, double t, const Tolerances& tol = {});

/// Products xy with x in E(s), y in E(t) span exactly E(s + t).
bool product_system_check(const SuperOperator& l, double s, double t,
                          const Tolerances& tol = {});

/// The operator semigroup T(t) = e^{ct} exp(t (v + k)) with v in E, where
/// (E, k) is the owning decomposition. Distinct (c, v) give distinct units.
///
/// Every unit of a finite-dimensional semigroup has a bounded generator, so
/// this parametrization is exhaustive here.
struct Unit {
  Complex c;
  CVector v_coords;  ///< coordinates of v in owner->space.basis()
  std::shared_ptr<const GklsForm> owner;

  CMatrix v() const { return owner->space.element(v_coords); }
};

/// Throws DimensionMismatch when v_coords does not match dim E.
Unit make_unit(std::shared_ptr<const GklsForm> owner, Complex c, CVector v_coords);

/// T(t) = e^{ct} expm(t (v + k)).
CMatrix unit_matrix(const Unit& u, double t);

/// Smallest Choi eigenvalue of x -> e^{alpha t} P_t(x) - T(t) x T(t)*, divided
/// by max(1, |Choi(e^{alpha t} P_t)|).
double unit_margin(const SuperOperator& l, const Unit& u, double t, double alpha);

/// alpha = <v, v>_E + 2 Re c; the smallest constant making every sampled
/// e^{alpha t} P_t - Ad T(t) completely positive.
double unit_alpha(const Unit& u);

/// Unit condition at every sampled t with alpha = unit_alpha(u), plus
/// T(t) in E(t).
bool verify_unit(const SuperOperator& l, const Unit& u, std::span<const double> ts,
                 const Tolerances& tol = {});

/// c1 + conj(c2) + <v1, v2>_E. Throws OwnerMismatch.
Complex covariance(const Unit& u1, const Unit& u2);

/// (m / t) Log <T1(t/m), T2(t/m)>_{E(t/m)} with the principal logarithm.
/// Throws NotMember when T_i(t/m) falls outside E(t/m) and LogBranch when the
/// inner product sits on or next to the negative real axis.
Complex covariance_estimate(const SuperOperator& l, const Unit& u1, const Unit& u2, double t,
                            int m, const Tolerances& tol = {});

/// dim E, also the index of the minimal E0-semigroup dilation.
int index(const SuperOperator& l, const Tolerances& tol = {});

/// Covariance values on a finite sample of units.
struct CovarianceKernel {
  std::vector<Unit> sample;
  CMatrix matrix;  ///< matrix(i, j) = c(sample[i], sample[j])
};

CovarianceKernel covariance_kernel(std::vector<Unit> sample);

/// G(m, m') = c(x_m, x_m') - c(x_m, x_0) - c(x_0, x_m') + c(x_0, x_0),
/// m, m' >= 1: the Gram matrix of the differences delta_{x_m} - delta_{x_0}.
CMatrix centered_gram(const CovarianceKernel& kernel);

/// rank of centered_gram, the dimension of the span of the sample inside
/// H(X, c).
int gram_dimension(const CovarianceKernel& kernel, const Tolerances& tol = {});

/// Reproducible units: c cycles through {0, 1, i}; v runs through the basis
/// vectors of E and then seeded random combinations.
std::vector<Unit> sample_units(const std::shared_ptr<const GklsForm>& owner, int count,
                               std::uint64_t seed);

}  // namespace cpsemi
