#include <catch_amalgamated.hpp>

#include "cpsemi/errors.hpp"
#include "cpsemi/sampling.hpp"
#include "cpsemi/superop.hpp"
#include "oracles.hpp"

using namespace cpsemi;

TEST_CASE("vec stacks columns and unvec inverts it") {
  CMatrix x(2, 2);
  x << 1, 2, 3, 4;
  const CVector v = vec(x);
  CHECK(v(0) == Complex(1));
  CHECK(v(1) == Complex(3));
  CHECK(v(2) == Complex(2));
  CHECK(v(3) == Complex(4));
  CHECK(unvec(v, 2) == x);
  CHECK_THROWS_AS(unvec(CVector::Zero(5), 2), DimensionMismatch);
}

TEST_CASE("factories match maps built entry by entry") {
  Rng rng(21);
  for (int n = 1; n <= 4; ++n) {
    const CMatrix a = random_complex_matrix(n, n, rng);
    const CMatrix b = random_complex_matrix(n, n, rng);
    CHECK((SuperOperator::sandwich(a, b).matrix() -
           oracle::matrix_of(n, [&](const CMatrix& x) { return CMatrix(a * x * b); }))
              .norm() < 1e-12);
    CHECK((SuperOperator::conjugation(a).matrix() -
           oracle::matrix_of(n, [&](const CMatrix& x) { return CMatrix(a * x * a.adjoint()); }))
              .norm() < 1e-12);
    CHECK((SuperOperator::left_right(a, b).matrix() -
           oracle::matrix_of(n, [&](const CMatrix& x) { return CMatrix(a * x + x * b); }))
              .norm() < 1e-12);
    CHECK((SuperOperator::transpose(n).matrix() -
           oracle::matrix_of(n, [](const CMatrix& x) { return CMatrix(x.transpose()); }))
              .norm() < 1e-14);
    CHECK(SuperOperator::identity(n)(a) == a);
  }
}

TEST_CASE("apply checks dimensions") {
  CHECK_THROWS_AS(SuperOperator::identity(2)(CMatrix::Zero(3, 3)), DimensionMismatch);
}

TEST_CASE("choi_of matches the block definition") {
  Rng rng(22);
  for (int n = 1; n <= 4; ++n) {
    const SuperOperator p = random_cp_map(n, 2, rng);
    const CMatrix ref = oracle::choi_of(n, [&](const CMatrix& x) { return p(x); });
    CHECK((choi_of(p).matrix() - ref).norm() < 1e-12);
    CHECK((choi_to_superop(choi_of(p)).matrix() - p.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("Choi of a conjugation is the rank-one projector on vec(v)") {
  Rng rng(23);
  const CMatrix v = random_complex_matrix(3, 3, rng);
  const CMatrix j = choi_of(SuperOperator::conjugation(v)).matrix();
  CHECK((j - vec(v) * vec(v).adjoint()).norm() < 1e-12);
}

TEST_CASE("Choi of identity and transpose") {
  const CVector w = omega(2);
  CHECK((choi_of(SuperOperator::identity(2)).matrix() - w * w.adjoint()).norm() < 1e-15);
  const SuperOperator t = SuperOperator::transpose(2);
  CHECK(is_hermiticity_preserving(t));
  CHECK_FALSE(is_completely_positive(t));
  CHECK(choi_min_eigenvalue(t) == Catch::Approx(-1.0));
}

TEST_CASE("choi_of is linear") {
  Rng rng(24);
  const SuperOperator p = random_cp_map(3, 2, rng);
  const SuperOperator q = random_cp_map(3, 3, rng);
  const Complex a(0.3, -1.2);
  const Complex b(-2.0, 0.5);
  const CMatrix lhs = choi_of(a * p + b * q).matrix();
  const CMatrix rhs = a * choi_of(p).matrix() + b * choi_of(q).matrix();
  CHECK((lhs - rhs).norm() <= 1e-14 * rhs.norm());
}

TEST_CASE("superop -> Choi -> Kraus -> superop round trip on random CP maps") {
  Rng rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const int count = 1 + trial % (n * n);
    const SuperOperator p = random_cp_map(n, count, rng);
    const std::vector<CMatrix> kraus = kraus_of(choi_of(p));
    CHECK(static_cast<int>(kraus.size()) <= count);
    const SuperOperator back = SuperOperator::from_kraus(kraus, n);
    CHECK((back.matrix() - p.matrix()).norm() <= 1e-10 * std::max(1.0, p.matrix().norm()));

    // P(1) = sum v v*.
    CMatrix sum = CMatrix::Zero(n, n);
    for (const CMatrix& v : kraus) sum += v * v.adjoint();
    const CMatrix one = p(CMatrix::Identity(n, n));
    CHECK((one - sum).norm() <= 1e-10 * std::max(1.0, one.norm()));
  }
}

TEST_CASE("Kraus operators carry a real positive leading entry") {
  Rng rng(26);
  const SuperOperator p = random_cp_map(3, 4, rng);
  for (const CMatrix& v : kraus_of(choi_of(p))) {
    const CVector flat = vec(v);
    const double big = flat.cwiseAbs().maxCoeff();
    Eigen::Index first = 0;
    while (std::abs(flat(first)) < big - 1e-10) ++first;
    CHECK(flat(first).real() > 0.0);
    CHECK(std::abs(flat(first).imag()) < 1e-12);
  }
}

TEST_CASE("kraus_of rejects non-PSD Choi matrices") {
  CHECK_THROWS_AS(kraus_of(choi_of(SuperOperator::transpose(2))), NotPSD);
}

TEST_CASE("unitality of conjugation by a unitary") {
  Rng rng(27);
  CHECK(is_unital(SuperOperator::conjugation(random_unitary(3, rng))));
  CHECK_FALSE(is_unital(SuperOperator::conjugation(2.0 * random_unitary(3, rng))));
}

TEST_CASE("composition matches applying maps in turn") {
  Rng rng(28);
  const SuperOperator p = random_cp_map(2, 2, rng);
  const SuperOperator q = random_cp_map(2, 3, rng);
  const CMatrix x = random_complex_matrix(2, 2, rng);
  CHECK(((p * q)(x) - p(q(x))).norm() < 1e-12);
}
