// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cpsemi/generator.hpp"
#include "cpsemi/sampling.hpp"
#include "cpsemi/semigroup.hpp"
#include "cpsemi/symbol.hpp"
#include "oracles.hpp"

using namespace cpsemi;

namespace {

const std::vector<double> kGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
constexpr GeneratorKind kKinds[] = {GeneratorKind::general, GeneratorKind::unital,
                                    GeneratorKind::automorphism};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

SuperOperator dephasing() {
  const std::vector<CMatrix> ops = {oracle::pauli(3)};
  return hamiltonian_lindblad(CMatrix::Zero(2, 2), ops);
}

// 200 Hermiticity-preserving maps, half conditionally CP by construction.
Outcome ccp_equivalence() {
  const Tolerances tol{1e-8, 1e-8, 1e-10};
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1001);
  int disagreements = 0;
  int missing_witness = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const SuperOperator l = random_hermiticity_preserving_map(n, trial % 2 == 0, rng);
    const bool verdict = is_conditionally_cp(l, tol);
    bool exp_cp = true;
    for (const double t : {1e-3, 1e-2, 1e-1, 1.0}) {
      exp_cp = exp_cp && is_completely_positive(evolve(l, t), tol);
    }
    const auto witness = find_constrained_witness(l, 50, 5000 + trial, tol);
    if (verdict != exp_cp || verdict == witness.has_value()) ++disagreements;
    if (!verdict && !witness) ++missing_witness;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {disagreements == 0 && missing_witness == 0 && secs <= 60.0,
          fmt("%d disagreements, %d missing witnesses over 200 maps in %.1f s", disagreements,
              missing_witness, secs)};
}

Outcome decompose_rebuild() {
  Rng rng(1002);
  double worst = 0.0;
  int bad_rank = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const GeneratorKind kind = kKinds[(trial / 3) % 3];
    const SuperOperator l = random_ccp_generator(n, kind, rng);
    const GklsForm d = decompose(l);
    worst = std::max(worst, d.residual / l.matrix().norm());
    const int lo = kind == GeneratorKind::unital ? 1 : 0;
    if (d.rank() < lo || d.rank() > n * n - 1) ++bad_rank;
  }
  return {worst <= 1e-10 && bad_rank == 0,
          fmt("max relative residual %.2e, %d rank violations", worst, bad_rank)};
}

Outcome covariance_oracle() {
  const SuperOperator l = dephasing();
  const auto d = std::make_shared<const GklsForm>(decompose(l));
  const Complex phase = d->space.basis()[0](0, 0);  // basis element = phase * sigma_z
  CVector plus(1), minus(1);
  plus(0) = 1.0 / phase;
  minus(0) = -1.0 / phase;
  const Unit up = make_unit(d, 0.0, plus);
  const Unit down = make_unit(d, 0.0, minus);
  bool ok = true;
  double final_err = 0.0;
  for (const auto& [other, expected] : {std::pair{&up, 1.0}, std::pair{&down, -1.0}}) {
    double previous = 1e300;
    for (const int m : {8, 32, 128, 512}) {
      const double err = std::abs(covariance_estimate(l, up, *other, 1.0, m) - expected);
      ok = ok && err <= previous + 1e-6;
      previous = err;
    }
    ok = ok && previous <= 1e-3 && std::abs(covariance(up, *other) - expected) <= 1e-12;
    final_err = std::max(final_err, previous);
  }
  return {ok, fmt("error at m = 512: %.2e", final_err)};
}

Outcome unit_verification() {
  Rng rng(1004);
  double worst = 1e300;
  for (int g = 0; g < 10; ++g) {
    const int n = 2 + g % 2;
    const auto d = std::make_shared<const GklsForm>(
        decompose(random_ccp_generator(n, GeneratorKind::unital, rng)));
    const SuperOperator l = d->rebuild();
    for (int k = 0; k < 2; ++k) {
      const Complex c = random_complex_matrix(1, 1, rng)(0, 0);
      const Unit u = make_unit(d, c, random_complex_matrix(d->rank(), 1, rng).col(0));
      for (const double t : kGrid) worst = std::min(worst, unit_margin(l, u, t, unit_alpha(u)));
    }
  }
  return {worst >= -1e-9, fmt("smallest scaled Choi eigenvalue %.2e over 20 units", worst)};
}

Outcome kernel_index() {
  Rng rng(1005);
  int mismatches = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const SuperOperator l = random_ccp_generator(n, kKinds[trial % 3], rng);
    const auto d = std::make_shared<const GklsForm>(decompose(l));
    const int g = gram_dimension(covariance_kernel(sample_units(d, d->rank() + 3, 100 + trial)));
    if (g != d->rank() || index(l) != d->rank() || rank(l) != d->rank()) ++mismatches;
  }
  return {mismatches == 0, fmt("%d mismatches over 20 generators", mismatches)};
}

Outcome product_system() {
  Rng rng(1006);
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const SuperOperator l = random_ccp_generator(2 + trial % 2, kKinds[trial % 3], rng);
    if (!product_system_check(l, 0.5, 0.5) || !product_system_check(l, 0.3, 0.7)) ++failures;
  }
  return {failures == 0, fmt("%d failures over 20 generators", failures)};
}

Outcome gauge_invariance() {
  Rng rng(1007);
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const GklsForm d = decompose(random_ccp_generator(n, kKinds[trial % 2], rng));
    const CMatrix id = CMatrix::Identity(n, n);
    const CVector lambda = random_complex_matrix(d.rank(), 1, rng).col(0);
    const Complex c = random_complex_matrix(1, 1, rng)(0, 0);
    const bool symbol_ok = symbols_equal(gauge_shift(d, lambda, c), d.space.cp_map());

    std::vector<CMatrix> kraus;
    CMatrix u = CMatrix::Zero(n, n);
    for (int m = 0; m < d.rank(); ++m) {
      kraus.push_back(d.space.basis()[m] + lambda(m) * id);
      u += std::conj(lambda(m)) * d.space.basis()[m];
    }
    const CMatrix k2 = d.k - u - 0.5 * lambda.squaredNorm() * id;
    const bool same = same_generator(d, decompose(gkls_map(kraus, k2))).same;

    GklsForm bumped = d;
    bumped.k += 0.1 * id;
    const bool bumped_same = same_generator(d, bumped).same;
    if (!symbol_ok || !same || bumped_same) ++failures;
  }
  return {failures == 0, fmt("%d failures over 20 decompositions", failures)};
}

Outcome domination() {
  Rng rng(1008);
  double worst = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const SuperOperator l1 = random_ccp_generator(n, kKinds[trial % 3], rng);
    const SuperOperator l2 = l1 + random_cp_map(n, 1 + trial % 3, rng);
    for (const double t : kGrid) worst = std::min(worst, domination_margin(l1, l2, t));
  }
  return {worst >= -1e-9, fmt("smallest Choi eigenvalue %.2e over 20 pairs", worst)};
}

Outcome goldens() {
  const GklsForm deph = decompose(dephasing());
  const bool deph_ok = deph.rank() == 1 && index(dephasing()) == 1 &&
                       (deph.k + 0.5 * CMatrix::Identity(2, 2)).norm() <= 1e-10;

  const std::vector<CMatrix> paulis = {oracle::pauli(1), oracle::pauli(2), oracle::pauli(3)};
  const bool pauli_ok = rank(hamiltonian_lindblad(CMatrix::Zero(2, 2), paulis)) == 3;

  Rng rng(1009);
  bool rotation_ok = true;
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const SuperOperator l = hamiltonian_lindblad(random_hermitian(n, rng), {});
    rotation_ok = rotation_ok && rank(l) == 0;
    for (const double t : kGrid) {
      const SuperOperator p = evolve(l, t);
      for (int s = 0; s < 3; ++s) {
        const CMatrix x = random_complex_matrix(n, n, rng);
        const CMatrix y = random_complex_matrix(n, n, rng);
        worst = std::max(worst, (p(x * y) - p(x) * p(y)).norm() / std::max(1.0, (x * y).norm()));
      }
    }
  }
  rotation_ok = rotation_ok && worst <= 1e-9;
  return {deph_ok && pauli_ok && rotation_ok,
          fmt("dephasing %s, pauli %s, rotation %s (multiplicativity %.1e)", deph_ok ? "ok" : "bad",
              pauli_ok ? "ok" : "bad", rotation_ok ? "ok" : "bad", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 conditional-CP equivalence", ccp_equivalence},
      {"2 decompose/rebuild", decompose_rebuild},
      {"3 covariance estimator", covariance_oracle},
      {"4 unit domination", unit_verification},
      {"5 index via covariance kernel", kernel_index},
      {"6 product system", product_system},
      {"7 gauge invariance", gauge_invariance},
      {"8 CP domination", domination},
      {"9 known values", goldens},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
