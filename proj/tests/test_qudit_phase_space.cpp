#include <random>

#include <gtest/gtest.h>

#include "amqc/error.hpp"
#include "amqc/qudit_phase_space.hpp"
#include "oracles.hpp"

using namespace amqc;
using namespace amqc::qudit;

namespace {

constexpr auto MI = PhaseConvention::ModularInverse;
constexpr auto HR = PhaseConvention::HalfRoot;

Matrix mpow(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

TEST(QuditDim, RejectsSmall) {
  EXPECT_THROW(QuditDim(1), Error);
  EXPECT_EQ(QuditDim(2).value(), 2);
}

TEST(GeneralizedPauli, MatchesOracle) {
  for (int d = 2; d <= 8; ++d) {
    const auto [x, z] = generalized_pauli(QuditDim(d));
    EXPECT_LT(max_abs_diff(x, oracle::shift(d)), 1e-15);
    EXPECT_LT(max_abs_diff(z, oracle::clock(d)), 1e-15);
  }
  const auto [x2, z2] = generalized_pauli(QuditDim(2));
  EXPECT_LT(max_abs_diff(x2, pauli_x()), 1e-15);
  EXPECT_LT(max_abs_diff(z2, pauli_z()), 1e-15);
}

TEST(GeneralizedPauli, WeylExampleD5) {
  const auto [x, z] = generalized_pauli(QuditDim(5));
  EXPECT_LT(max_abs_diff(mpow(z, 3) * mpow(x, 2), oracle::omega(5, 1) * mpow(x, 2) * mpow(z, 3)), 1e-13);
}

TEST(GeneralizedPauli, WeylAndPeriodicityAllD) {
  for (int d = 2; d <= 8; ++d) {
    const auto [x, z] = generalized_pauli(QuditDim(d));
    EXPECT_LT(max_abs_diff(mpow(x, d), identity(d)), 1e-12);
    EXPECT_LT(max_abs_diff(mpow(z, d), identity(d)), 1e-12);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        EXPECT_LT(max_abs_diff(mpow(z, b) * mpow(x, a), oracle::omega(d, a * b) * mpow(x, a) * mpow(z, b)), 1e-12);
  }
}

TEST(Fourier, Examples) {
  EXPECT_LT(max_abs_diff(fourier(QuditDim(2)), hadamard()), 1e-15);
  EXPECT_LT(max_abs_diff(mpow(fourier(QuditDim(3)), 4), identity(3)), 1e-14);
  for (int d = 2; d <= 8; ++d) {
    const Matrix f = fourier(QuditDim(d));
    EXPECT_TRUE(is_unitary(f));
    EXPECT_LT(max_abs_diff(f.adjoint() * oracle::clock(d) * f, oracle::shift(d)), 1e-13) << d;
  }
}

TEST(Rotation, Examples) {
  EXPECT_LT(max_abs_diff(rotation(QuditDim(5), 0.0), identity(5)), 1e-15);
  EXPECT_LT(max_abs_diff(rotation(QuditDim(4), kPi / 2), oracle::clock(4)), 1e-15);
  const Matrix r = rotation(QuditDim(3), kPi);
  EXPECT_LT(max_abs_diff(r * r, identity(3)), 1e-14);
}

TEST(Displacement, Examples) {
  for (int d = 2; d <= 6; ++d) {
    const auto [x, z] = generalized_pauli(QuditDim(d));
    for (int a = 0; a < d; ++a) {
      EXPECT_LT(max_abs_diff(displacement(QuditDim(d), a, 0, HR), mpow(x, a)), 1e-14);
      EXPECT_LT(max_abs_diff(displacement(QuditDim(d), 0, a, HR), mpow(z, a)), 1e-14);
    }
  }
  EXPECT_NEAR(std::abs(displacement_prefactor(QuditDim(3), 1, 1, MI) - oracle::omega(3, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(displacement_prefactor(QuditDim(4), 1, 1, HR) - std::polar(1.0, -kPi / 4)), 0.0, 1e-15);
}

TEST(Displacement, MatchesEntrywiseOracle) {
  for (int d = 2; d <= 8; ++d)
    for (int x = -d; x <= d; ++x)
      for (int p = -d; p <= d; ++p) {
        EXPECT_LT(max_abs_diff(displacement(QuditDim(d), x, p, HR), oracle::displacement(d, x, p, false)), 1e-13);
        if (d % 2) EXPECT_LT(max_abs_diff(displacement(QuditDim(d), x, p, MI), oracle::displacement(d, x, p, true)), 1e-13);
      }
}

TEST(Displacement, ModularInverseNeedsOddD) {
  try {
    displacement(QuditDim(4), 1, 1, MI);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConvention);
  }
}

TEST(ComposeLabels, Examples) {
  const auto [l0, s0] = compose_labels(QuditDim(5), {2, 3}, {-2, -3}, MI);
  EXPECT_TRUE(l0.same_point({0, 0}, QuditDim(5)));
  EXPECT_NEAR(std::abs(s0 - 1.0), 0.0, 1e-15);

  const auto [l1, s1] = compose_labels(QuditDim(5), {2, 0}, {0, 3}, MI);
  EXPECT_EQ(l1.x, 2);
  EXPECT_EQ(l1.p, 3);
  EXPECT_NEAR(std::abs(s1 - oracle::omega(5, 3)), 0.0, 1e-14);
  EXPECT_LT(max_abs_diff(oracle::displacement(5, 0, 3, true) * oracle::displacement(5, 2, 0, true),
                         s1 * oracle::displacement(5, 2, 3, true)),
            1e-13);

  const auto [l2, s2] = compose_labels(QuditDim(4), {1, 0}, {0, 1}, HR);
  EXPECT_NEAR(std::abs(s2 - std::polar(1.0, kPi / 4)), 0.0, 1e-15);
}

TEST(ComposeLabels, RandomAgainstOracle) {
  std::mt19937_64 rng(7);
  for (bool mi : {true, false}) {
    for (int i = 0; i < 200; ++i) {
      int d = std::uniform_int_distribution<int>(2, 8)(rng);
      if (mi && d % 2 == 0) ++d;
      std::uniform_int_distribution<int> lab(-2 * d, 2 * d);
      const LatticeLabel a{lab(rng), lab(rng)}, b{lab(rng), lab(rng)};
      const auto [sum, s] = compose_labels(QuditDim(d), a, b, mi ? MI : HR);
      EXPECT_LT(max_abs_diff(oracle::displacement(d, b.x, b.p, mi) * oracle::displacement(d, a.x, a.p, mi),
                             s * oracle::displacement(d, sum.x, sum.p, mi)),
                1e-12);
    }
  }
}

TEST(ComposeLabels, ConventionMismatch) {
  EXPECT_THROW(compose_labels(QuditDim(3), {1, 0}, MI, {0, 1}, HR), Error);
}

TEST(LoopPhase, Examples) {
  const LatticeLabel rect[] = {{2, 0}, {0, 3}, {-2, 0}, {0, -3}};
  for (auto conv : {MI, HR}) EXPECT_NEAR(std::abs(loop_phase(QuditDim(5), rect, conv) - oracle::omega(5, 1)), 0.0, 1e-14);
  const Matrix prod = oracle::displacement(5, 0, -3, false) * oracle::displacement(5, -2, 0, false) *
                      oracle::displacement(5, 0, 3, false) * oracle::displacement(5, 2, 0, false);
  EXPECT_LT(max_abs_diff(prod, oracle::omega(5, 1) * identity(5)), 1e-13);

  const LatticeLabel degenerate[] = {{0, 0}, {0, 4}, {0, 0}, {0, -4}};
  EXPECT_NEAR(std::abs(loop_phase(QuditDim(7), degenerate, HR) - 1.0), 0.0, 1e-14);

  const LatticeLabel qubit[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  EXPECT_NEAR(std::abs(loop_phase(QuditDim(2), qubit, HR) + 1.0), 0.0, 1e-14);
}

TEST(LoopPhase, ConventionIndependentAndWrapsTorus) {
  for (int d = 3; d <= 7; d += 2)
    for (int x = 0; x < d; ++x)
      for (int p = 0; p < d; ++p) {
        const LatticeLabel rect[] = {{x, 0}, {0, p}, {-x, 0}, {0, -p}};
        EXPECT_NEAR(std::abs(loop_phase(QuditDim(d), rect, MI) - loop_phase(QuditDim(d), rect, HR)), 0.0, 1e-13);
      }
  // Closes on the torus without summing to zero.
  const LatticeLabel wrap[] = {{3, 0}, {0, 3}};
  const Matrix prod = oracle::displacement(3, 0, 3, true) * oracle::displacement(3, 3, 0, true);
  EXPECT_NEAR(std::abs(loop_phase(QuditDim(3), wrap, MI) - prod(0, 0)), 0.0, 1e-13);
}

TEST(LoopPhase, OpenLoopReportsNetLabel) {
  const LatticeLabel open[] = {{1, 0}, {0, 2}};
  try {
    loop_phase(QuditDim(5), open, HR);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OpenLoop);
    EXPECT_NE(std::string(e.what()).find("(1, 2)"), std::string::npos) << e.what();
  }
}

TEST(Rotation, ShiftedConjugation) {
  for (int d = 2; d <= 6; ++d)
    for (int x = -d; x <= d; ++x) {
      const double th = 0.3 + x;
      const Matrix m = displacement(QuditDim(d), -x, 0, HR) * rotation(QuditDim(d), th) * displacement(QuditDim(d), x, 0, HR);
      for (int k = 0; k < d; ++k)
        EXPECT_NEAR(std::abs(m(k, k) - std::polar(1.0, th * oracle::pmod(x + k, d))), 0.0, 1e-12);
    }
}
