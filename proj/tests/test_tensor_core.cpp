#include <random>

#include <gtest/gtest.h>

#include "amqc/error.hpp"
#include "amqc/tensor_core.hpp"
#include "oracles.hpp"

using namespace amqc;

namespace {

Matrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ();
}

void expect_error(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind);
  }
}

}  // namespace

TEST(Kron, Examples) {
  EXPECT_EQ(kron(identity(2), identity(2)), identity(4));
  Matrix zz = Matrix::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  EXPECT_EQ(kron(pauli_z(), pauli_z()), zz);
  const Matrix xi3 = kron(pauli_x(), identity(3));
  EXPECT_EQ(xi3(0, 3), cplx(1));
  EXPECT_EQ(xi3.rows(), 6);
}

TEST(Kron, Associative) {
  std::mt19937_64 rng(1);
  // Gaussian-integer entries: every product is exact, so equality is bitwise.
  std::uniform_int_distribution<int> small(-9, 9);
  const auto gaussian = [&](Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (auto& v : m.reshaped()) v = cplx(small(rng), small(rng));
    return m;
  };
  for (int i = 0; i < 10; ++i) {
    const Matrix a = gaussian(2, 3), b = gaussian(3, 2), c = gaussian(2, 2);
    const Matrix l = kron(kron(a, b), c), r = kron(a, kron(b, c));
    EXPECT_EQ((l - r).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(kron_all({a, b, c}), l);
  }
  // General complex entries differ only by rounding of (ab)c vs a(bc).
  for (int i = 0; i < 10; ++i) {
    const Matrix a = random_unitary(rng, 2), b = random_unitary(rng, 3), c = random_unitary(rng, 2);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-15);
  }
}

TEST(EmbedControlled, IdentityAndCnot) {
  EXPECT_EQ(embed_controlled(0, 2, 3, identity(3), identity(3)), identity(12));
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  EXPECT_EQ(embed_controlled(0, 1, 2, identity(2), pauli_x()), cnot);
}

TEST(EmbedControlled, BasisEnumeration) {
  const Matrix z3 = oracle::clock(3);
  const Matrix got = embed_controlled(1, 2, 3, identity(3), z3);
  Matrix expect = Matrix::Zero(12, 12);
  for (int q0 = 0; q0 < 2; ++q0)
    for (int q1 = 0; q1 < 2; ++q1)
      for (int a = 0; a < 3; ++a) {
        const int idx = (q0 * 2 + q1) * 3 + a;
        expect(idx, idx) = q1 ? z3(a, a) : cplx(1);
      }
  EXPECT_LT(max_abs_diff(got, expect), 1e-15);
  EXPECT_TRUE(is_unitary(got));
}

TEST(EmbedControlled, Errors) {
  expect_error(ErrorKind::InvalidArgument, [] { embed_controlled(2, 2, 2, identity(2), identity(2)); });
  expect_error(ErrorKind::InvalidArgument, [] { embed_controlled(0, 1, 3, identity(2), identity(3)); });
}

TEST(EmbedRegisterControlled, MatchesDiagonalOracle) {
  const Matrix got = embed_register_controlled(2, 0, 3, identity(2), phase_gate(0.7));
  EXPECT_LT(max_abs_diff(got, oracle::controlled_rotations(3, {{2, 0, 0.7}})), 1e-15);
}

TEST(PhaseDistance, Examples) {
  std::mt19937_64 rng(2);
  const Matrix u = random_unitary(rng, 3);
  EXPECT_LT(phase_distance(u, u), 1e-14);
  EXPECT_LT(phase_distance(u, std::polar(1.0, kPi / 3) * u), 1e-14);
  EXPECT_NEAR(phase_distance(identity(2), pauli_z()), 2.0, 1e-15);
  EXPECT_NEAR(oracle::scan_phase_distance(identity(2), pauli_z()), 2.0, 1e-9);
}

TEST(PhaseDistance, MatchesScanOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Matrix a = random_unitary(rng, 2), b = random_unitary(rng, 2);
    EXPECT_NEAR(phase_distance(a, b), oracle::scan_phase_distance(a, b), 1e-8);
  }
}

TEST(PhaseDistance, Pseudometric) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = random_unitary(rng, 4), b = random_unitary(rng, 4), c = random_unitary(rng, 4);
    EXPECT_NEAR(phase_distance(a, b), phase_distance(b, a), 1e-12);
    EXPECT_LE(phase_distance(a, c), phase_distance(a, b) + phase_distance(b, c) + 1e-10);
  }
}

TEST(PhaseDistance, DimensionMismatch) {
  expect_error(ErrorKind::InvalidArgument, [] { phase_distance(identity(2), identity(3)); });
}

TEST(StateFidelity, Examples) {
  StateVector zero(2), one(2), plus(2);
  zero << 1, 0;
  one << 0, 1;
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  EXPECT_DOUBLE_EQ(state_fidelity(zero, zero), 1.0);
  EXPECT_DOUBLE_EQ(state_fidelity(zero, one), 0.0);
  EXPECT_NEAR(state_fidelity(plus, zero), 0.5, 1e-15);
  expect_error(ErrorKind::InvalidArgument, [&] { state_fidelity(zero, StateVector::Zero(3)); });
}

TEST(Expi, MatchesPadeExponential) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Matrix u = random_unitary(rng, 4);
    const Matrix h = (u + u.adjoint()) / 2.0;
    EXPECT_LT(max_abs_diff(expi_hermitian(h, 0.37), oracle::expi(h, 0.37)), 1e-12);
    EXPECT_TRUE(is_unitary(expi_hermitian(h, 0.37)));
  }
}

TEST(Gates, Unitary) {
  for (const Matrix& m : {pauli_x(), pauli_y(), pauli_z(), hadamard(), phase_gate(1.3)}) EXPECT_TRUE(is_unitary(m));
  EXPECT_FALSE(is_unitary(2.0 * identity(2)));
}
