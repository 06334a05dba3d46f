#pragma once

#include <random>

#include "cpsemi/superop.hpp"

namespace cpsemi {

/// Every randomized routine takes an explicit engine so runs are reproducible.
using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex normal (real and imaginary variance 1/2).
CMatrix random_complex_matrix(int rows, int cols, Rng& rng);
CMatrix random_hermitian(int n, Rng& rng);
/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
CMatrix random_unitary(int n, Rng& rng);

/// x -> sum_m v_m x v_m* with `kraus_count` random v_m scaled by `scale`.
SuperOperator random_cp_map(int n, int kraus_count, Rng& rng, double scale = 1.0);

enum class GeneratorKind {
  general,       ///< random Kraus part plus random drift k
  unital,        ///< k = i h - 1/2 sum v v*, so L(1) = 0
  automorphism,  ///< L = i[h, .]
};

/// Random generator of a CP semigroup.
SuperOperator random_ccp_generator(int n, GeneratorKind kind, Rng& rng);

/// Random Hermiticity-preserving map with controlled conditional CP status.
/// The projected Choi spectrum lies in {0} U [0.05, 1] when `ccp` and has at
/// least one eigenvalue in [-1, -0.05] otherwise.
SuperOperator random_hermiticity_preserving_map(int n, bool ccp, Rng& rng);

}  // namespace cpsemi
