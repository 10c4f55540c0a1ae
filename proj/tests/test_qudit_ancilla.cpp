#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "amqc/error.hpp"
#include "amqc/qudit_ancilla.hpp"
#include "oracles.hpp"

using namespace amqc;
using namespace amqc::qudit;

namespace {

constexpr auto MI = PhaseConvention::ModularInverse;
constexpr auto HR = PhaseConvention::HalfRoot;

std::vector<PhaseConvention> convs(int d) { return d % 2 ? std::vector{MI, HR} : std::vector{HR}; }

StateVector uniform(int d) { return StateVector::Constant(d, 1.0 / std::sqrt(double(d))); }

Matrix gate_of(const InteractionSequence& seq, const StateVector& anc) {
  const GateReport r = extract_register_gate(seq, anc);
  EXPECT_TRUE(r.register_unitary.has_value());
  EXPECT_NEAR(r.ancilla_return_fidelity, 1.0, 1e-12);
  return r.register_unitary.value_or(Matrix::Zero(1, 1));
}

}  // namespace

TEST(ApplyInteraction, Examples) {
  const QuditDim d3(3);
  const StateVector anc = uniform(3);
  StateVector one(2);
  one << 0, 1;
  const HybridState s = HybridState::basis_product(1, 1, anc);
  const HybridState same = apply_interaction(s, {0, {0, 0}}, HR);
  EXPECT_LT((same.amplitudes() - s.amplitudes()).norm(), 1e-15);

  const HybridState off = apply_interaction(HybridState::basis_product(1, 0, anc), {0, {2, 1}}, HR);
  EXPECT_LT((off.amplitudes() - HybridState::basis_product(1, 0, anc).amplitudes()).norm(), 1e-15);

  const HybridState shifted = apply_interaction(HybridState::basis_product(1, 1, position_state(d3, 0)), {0, {1, 0}}, HR);
  EXPECT_LT((shifted.amplitudes() - oracle::kron(one, position_state(d3, 1))).norm(), 1e-15);
}

TEST(ApplyInteraction, MatchesEmbeddedOperator) {
  std::mt19937_64 rng(9);
  for (int d : {2, 3, 5}) {
    for (auto pol : {Polarity::ApplyOnOne, Polarity::Symmetric}) {
      StateVector v(4 * d);
      for (auto& a : v) a = cplx(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
      v.normalize();
      const Interaction in{1, {1, 2}, pol};
      const HybridState out = apply_interaction(HybridState(2, QuditDim(d), v), in, HR);
      const Matrix dplus = oracle::displacement(d, 1, 2, false), dminus = oracle::displacement(d, -1, -2, false);
      const Matrix op = pol == Polarity::ApplyOnOne ? embed_controlled(1, 2, d, identity(d), dplus)
                                                    : embed_controlled(1, 2, d, dplus, dminus);
      EXPECT_LT((out.amplitudes() - op * v).norm(), 1e-13);
      EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-12);
    }
  }
  EXPECT_THROW(apply_interaction(HybridState::basis_product(1, 0, uniform(3)), {1, {1, 0}}, HR), Error);
}

TEST(ExtractGate, EmptyAndOpen) {
  InteractionSequence empty{2, QuditDim(3), HR, {}};
  const GateReport r = extract_register_gate(empty, uniform(3));
  ASSERT_TRUE(r.register_unitary);
  EXPECT_LT(max_abs_diff(*r.register_unitary, identity(4)), 1e-15);

  InteractionSequence open{1, QuditDim(3), HR, {Interaction{0, {1, 0}}}};
  const GateReport o = extract_register_gate(open, position_state(QuditDim(3), 0));
  EXPECT_GT(o.residual_entanglement, 1e-3);
  EXPECT_FALSE(o.register_unitary);
}

TEST(ExtractGate, WrongAncillaDimension) { EXPECT_THROW(extract_register_gate({1, QuditDim(3), HR, {}}, uniform(2)), Error); }

TEST(TwoQubit, Examples) {
  EXPECT_LT(phase_distance(gate_of(two_qubit_sequence(QuditDim(2), HR, 2, 0, 1, 1, 1), uniform(2)),
                           oracle::controlled_rotations(2, {{0, 1, kPi}})),
            1e-12);
  EXPECT_LT(phase_distance(gate_of(two_qubit_sequence(QuditDim(4), HR, 2, 0, 1, 1, 2), uniform(4)),
                           oracle::controlled_rotations(2, {{0, 1, kPi}})),
            1e-12);
  const Matrix g = gate_of(two_qubit_sequence(QuditDim(5), MI, 2, 0, 1, 2, 3), uniform(5));
  EXPECT_LT(phase_distance(g, oracle::controlled_rotations(2, {{0, 1, 2 * kPi / 5}})), 1e-12);
  // Phase only on |11>.
  EXPECT_LT(std::abs(g(1, 1) / g(0, 0) - 1.0), 1e-12);
  EXPECT_LT(std::abs(g(3, 3) / g(0, 0) - oracle::omega(5, 1)), 1e-12);
  EXPECT_THROW(two_qubit_sequence(QuditDim(3), HR, 2, 1, 1, 1, 1), Error);
}

TEST(TwoQubit, AllLabelsAllInitsBothConventions) {
  for (int d : {2, 3, 4, 5, 8})
    for (auto conv : convs(d))
      for (int x = 0; x < d; ++x)
        for (int p = 0; p < d; ++p) {
          const auto seq = two_qubit_sequence(QuditDim(d), conv, 2, 0, 1, x, p);
          EXPECT_EQ(seq.interaction_count(), 4U);
          for (const StateVector& anc : {position_state(QuditDim(d), 0), position_state(QuditDim(d), d - 1), uniform(d)}) {
            EXPECT_LT(phase_distance(gate_of(seq, anc), oracle::controlled_rotations(2, {{0, 1, 2 * kPi * x * p / d}})), 1e-10);
          }
        }
}

TEST(TwoQubit, ReversedRolesInLargerRegister) {
  const auto seq = two_qubit_sequence(QuditDim(5), MI, 3, 2, 0, 1, 3);
  EXPECT_LT(phase_distance(gate_of(seq, uniform(5)), oracle::controlled_rotations(3, {{2, 0, 2 * kPi * 3 / 5}})), 1e-10);
}

TEST(FanOneTarget, Examples) {
  const std::int64_t one[] = {2};
  const auto single = fan_one_target(QuditDim(5), HR, one, 3);
  const auto pair = two_qubit_sequence(QuditDim(5), HR, 2, 0, 1, 2, 3);
  EXPECT_LT(phase_distance(gate_of(single, uniform(5)), gate_of(pair, uniform(5))), 1e-12);

  const std::int64_t xs[] = {1, 2, 3};
  const auto seq = fan_one_target(QuditDim(4), HR, xs, 1);
  EXPECT_EQ(seq.interaction_count(), 8U);
  EXPECT_EQ(naive_fan_one_target_count(3), 12U);
  EXPECT_LT(phase_distance(gate_of(seq, uniform(4)),
                           oracle::controlled_rotations(4, {{0, 3, kPi / 2}, {1, 3, kPi}, {2, 3, 3 * kPi / 2}})),
            1e-10);
}

TEST(FanBipartite, ExamplesAndRandom) {
  const std::int64_t xs[] = {1, 2}, ps[] = {1, 1};
  for (auto conv : {MI, HR}) {
    const auto seq = fan_bipartite(QuditDim(3), conv, xs, ps);
    EXPECT_EQ(seq.interaction_count(), 8U);
    EXPECT_LT(phase_distance(gate_of(seq, uniform(3)), oracle::controlled_rotations(4, {{0, 2, 2 * kPi / 3},
                                                                                       {1, 2, 4 * kPi / 3},
                                                                                       {0, 3, 2 * kPi / 3},
                                                                                       {1, 3, 4 * kPi / 3}})),
              1e-10);
  }
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = std::uniform_int_distribution<int>(2, 7)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng), m = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::uniform_int_distribution<std::int64_t> lab(-d, d);
    std::vector<std::int64_t> xv(n), pv(m);
    for (auto& v : xv) v = lab(rng);
    for (auto& v : pv) v = lab(rng);
    std::vector<std::tuple<int, int, double>> gates;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) gates.emplace_back(int(k), int(n + j), 2 * kPi * xv[k] * pv[j] / d);
    const auto seq = fan_bipartite(QuditDim(d), HR, xv, pv);
    EXPECT_EQ(seq.interaction_count(), 2 * (n + m));
    EXPECT_EQ(naive_fan_bipartite_count(n, m), 4 * n * m);
    EXPECT_LT(phase_distance(gate_of(seq, uniform(d)), oracle::controlled_rotations(n + m, gates)), 1e-10);
  }
}

TEST(EntanglingCriterion, IffXpNotMultipleOfD) {
  for (int d : {2, 3, 4, 6})
    for (int x = 0; x < d; ++x)
      for (int p = 0; p < d; ++p) {
        const Matrix g = gate_of(two_qubit_sequence(QuditDim(d), HR, 2, 0, 1, x, p), uniform(d));
        const double defect = std::abs(g(0, 0) * g(3, 3) - g(1, 1) * g(2, 2));
        EXPECT_EQ(defect > 1e-9, (x * p) % d != 0) << d << " " << x << " " << p;
      }
}

TEST(Toffoli, Examples) {
  Matrix toffoli = identity(8);
  toffoli.block(6, 6, 2, 2) = pauli_x();
  EXPECT_LT(phase_distance(gate_of(generalized_toffoli(2, pauli_x(), QuditDim(3)), position_state(QuditDim(3), 0)), toffoli),
            1e-10);
  Matrix cnot = identity(4);
  cnot.block(2, 2, 2, 2) = pauli_x();
  EXPECT_LT(phase_distance(gate_of(generalized_toffoli(1, pauli_x(), QuditDim(2)), position_state(QuditDim(2), 0)), cnot),
            1e-10);
  const Matrix g = gate_of(generalized_toffoli(3, phase_gate(kPi / 3), QuditDim(5)), position_state(QuditDim(5), 0));
  for (int b = 0; b < 16; ++b) EXPECT_NEAR(std::arg(g(b, b) / g(0, 0)), b == 15 ? kPi / 3 : 0.0, 1e-12) << b;
}

TEST(Toffoli, OracleSweepAndPermutation) {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Matrix& u : {pauli_x(), phase_gate(kPi / 3), hadamard()}) {
      const QuditDim d(static_cast<int>(n + 2));
      const Matrix g = gate_of(generalized_toffoli(n, u, d), position_state(d, 0));
      EXPECT_LT(phase_distance(g, oracle::multi_controlled(n, u)), 1e-10);
      // Relabel controls by a random permutation and compare on basis inputs.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const std::size_t dim = std::size_t{1} << (n + 1);
      Matrix p = Matrix::Zero(dim, dim);
      for (std::size_t b = 0; b < dim; ++b) {
        std::size_t out = b & 1U;
        for (std::size_t k = 0; k < n; ++k) out |= ((b >> (n - k)) & 1U) << (n - perm[k]);
        p(out, b) = 1;
      }
      EXPECT_LT(phase_distance(p * g * p.transpose(), g), 1e-10);
    }
}

TEST(Toffoli, DimensionTooSmall) {
  try {
    generalized_toffoli(3, pauli_x(), QuditDim(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionTooSmall);
  }
}

TEST(ModD, Examples) {
  const Matrix small = gate_of(mod_d_phase_gate(0.9, 2, QuditDim(3)), position_state(QuditDim(3), 0));
  EXPECT_LT(phase_distance(small, oracle::controlled_rotations(3, {{0, 2, 0.9}, {1, 2, 0.9}})), 1e-10);

  const Matrix g = gate_of(mod_d_phase_gate(kPi / 5, 4, QuditDim(3)), position_state(QuditDim(3), 0));
  EXPECT_NEAR(std::abs(g(31, 31) - std::polar(1.0, kPi / 5)), 0.0, 1e-12);
  for (int b = 0; b < 32; b += 2) EXPECT_NEAR(std::abs(g(b, b) - 1.0), 0.0, 1e-12);
  EXPECT_EQ(mod_d_phase_gate(0.1, 4, QuditDim(3)).elements.size(), 9U);
}

TEST(ModD, ExhaustiveAgainstDiagonalOracle) {
  for (int d = 2; d <= 4; ++d)
    for (std::size_t n = 1; n <= 4; ++n) {
      const double th = 0.37 * static_cast<double>(n) + d;
      const Matrix g = gate_of(mod_d_phase_gate(th, n, QuditDim(d)), position_state(QuditDim(d), 0));
      const Matrix o = oracle::diagonal_gate(n + 1, [&](const std::vector<int>& q) {
        int s = 0;
        for (std::size_t k = 0; k < n; ++k) s += q[k];
        return th * (s % d) * q[n];
      });
      EXPECT_LT(max_abs_diff(g, o), 1e-12);
    }
}

TEST(ArbitraryRotation, Examples) {
  EXPECT_LT(phase_distance(gate_of(single_pair_arbitrary_rotation(kPi, QuditDim(2)), position_state(QuditDim(2), 0)),
                           oracle::controlled_rotations(2, {{0, 1, kPi}})),
            1e-12);
  EXPECT_LT(phase_distance(gate_of(single_pair_arbitrary_rotation(0, QuditDim(3)), position_state(QuditDim(3), 0)), identity(4)),
            1e-12);
  EXPECT_LT(phase_distance(gate_of(single_pair_arbitrary_rotation(2 * kPi / 7, QuditDim(3)), position_state(QuditDim(3), 0)),
                           oracle::controlled_rotations(2, {{0, 1, 2 * kPi / 7}})),
            1e-12);
}

TEST(Generator, ExamplesAndRandom) {
  EXPECT_LT(hamiltonian_generator_check(0.0, QuditDim(4)), 1e-14);
  EXPECT_LT(hamiltonian_generator_check(0.7, QuditDim(3)), 1e-12);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 20; ++i)
    EXPECT_LT(hamiltonian_generator_check(std::uniform_real_distribution<double>(-4, 4)(rng),
                                          QuditDim(std::uniform_int_distribution<int>(2, 6)(rng))),
              1e-12);
}

TEST(Generator, ExponentialOracle) {
  // exp(-i theta Z (x) S_z) is diagonal with phases -theta z s_m; compare with the Pade exponential.
  for (int d = 2; d <= 5; ++d) {
    const Matrix sz = spin_z(QuditDim(d));
    const Matrix h = oracle::kron(oracle::pauli('z'), sz);
    const double th = 0.41;
    const Matrix lhs = oracle::expi(h, -th);
    const Matrix local = oracle::kron(oracle::expi(oracle::pauli('z'), -th * (d - 1) / 2.0), identity(d));
    const Matrix ctrl = embed_controlled(0, 1, d, rotation(QuditDim(d), th), rotation(QuditDim(d), -th));
    EXPECT_LT(phase_distance(lhs, local * ctrl), 1e-12);
  }
}

TEST(Polarity, SymmetricEquivalentToDoubledApplyOnOne) {
  for (int d : {3, 4, 5})
    for (auto conv : convs(d))
      for (int x = 0; x < d; ++x)
        for (int p = 0; p < d; ++p) {
          const Matrix sym = gate_of(two_qubit_sequence(QuditDim(d), conv, 2, 0, 1, x, p, Polarity::Symmetric), uniform(d));
          const double a = 2 * kPi * x * p / d;
          EXPECT_LT(phase_distance(sym, oracle::zz_gates(2, {{0, 1, a}})), 1e-10);
          const Matrix one = gate_of(two_qubit_sequence(QuditDim(d), conv, 2, 0, 1, 2 * x, 2 * p), uniform(d));
          const Matrix local = oracle::kron(phase_gate(2 * a), phase_gate(2 * a));
          EXPECT_LT(phase_distance(local * sym, one), 1e-10);
        }
}
