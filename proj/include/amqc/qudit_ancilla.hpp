#pragma once

// Hybrid register (x) qudit-ancilla simulation of controlled-displacement
// sequences.
//
// Sequences are stored in application order: elements.front() acts first.
// Register qubit 0 is the most significant bit of the register index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "amqc/gate_report.hpp"
#include "amqc/qudit_phase_space.hpp"
#include "amqc/tensor_core.hpp"

namespace amqc::qudit {

enum class Polarity {
  ApplyOnOne,  // |0><0| (x) I + |1><1| (x) D(l)
  Symmetric,   // |0><0| (x) D(l) + |1><1| (x) D(-l)
};

struct Interaction {
  std::size_t qubit = 0;
  LatticeLabel label;
  Polarity polarity = Polarity::ApplyOnOne;
};

// |level><level|_x (x) U + (I - |level><level|_x) (x) I on (ancilla, target).
struct ProjectedGate {
  std::size_t target = 0;
  std::int64_t level = 0;
  Matrix u;
};

// |0><0| (x) I + |1><1| (x) R_d(theta) on (control qubit, ancilla).
struct ControlledRotation {
  std::size_t control = 0;
  double theta = 0.0;
};

// Uncontrolled R_d(theta) on the ancilla.
struct AncillaRotation {
  double theta = 0.0;
};

using SequenceElement = std::variant<Interaction, ProjectedGate, ControlledRotation, AncillaRotation>;

struct InteractionSequence {
  std::size_t n_qubits = 0;
  QuditDim d{2};
  PhaseConvention conv = PhaseConvention::HalfRoot;
  std::vector<SequenceElement> elements;

  /// Ancilla-register couplings, i.e. every element except local ancilla rotations.
  std::size_t interaction_count() const;
};

class HybridState {
 public:
  HybridState(std::size_t n_qubits, QuditDim d, StateVector amplitudes);

  /// |bits> (x) anc.
  static HybridState basis_product(std::size_t n_qubits, std::size_t bits, const StateVector& anc);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  QuditDim anc_dim() const noexcept { return d_; }
  const StateVector& amplitudes() const noexcept { return amps_; }
  StateVector& amplitudes() noexcept { return amps_; }

  /// Amplitudes arranged as a 2^n x d matrix (register rows, ancilla columns).
  Matrix as_matrix() const;

 private:
  std::size_t n_qubits_;
  QuditDim d_;
  StateVector amps_;
};

/// Position eigenstate |m>_x.
StateVector position_state(QuditDim d, std::int64_t m);

HybridState apply_interaction(const HybridState& s, const Interaction& i, PhaseConvention conv);

void apply_element(HybridState& s, const SequenceElement& e, PhaseConvention conv);

HybridState run(const InteractionSequence& seq, HybridState s);

/// Full (2^n d) x (2^n d) unitary of the sequence, by column-wise simulation.
Matrix sequence_unitary(const InteractionSequence& seq);

GateReport extract_register_gate(const InteractionSequence& seq, const StateVector& anc_init);

// Sequence builders. Unless stated otherwise the register holds only the
// qubits the sequence touches.

/// D^k(0,-p) D^j(-x,0) D^k(0,p) D^j(x,0) on an n-qubit register; C^j_k R(2 pi x p / d)
/// for ApplyOnOne polarity.
InteractionSequence two_qubit_sequence(QuditDim d, PhaseConvention conv, std::size_t n_qubits,
                                       std::size_t j, std::size_t k, std::int64_t x, std::int64_t p,
                                       Polarity polarity = Polarity::ApplyOnOne);

/// Controls 0..n-1 with position steps xs, target n with momentum step p:
/// prod_k C^k_t R(2 pi x_k p / d) in 2(n+1) interactions.
InteractionSequence fan_one_target(QuditDim d, PhaseConvention conv, std::span<const std::int64_t> xs,
                                   std::int64_t p);

/// Controls 0..n-1 (steps xs), targets n..n+m-1 (steps ps):
/// prod_j prod_k C^k_j R(2 pi x_k p_j / d) in 2(n+m) interactions.
InteractionSequence fan_bipartite(QuditDim d, PhaseConvention conv, std::span<const std::int64_t> xs,
                                  std::span<const std::int64_t> ps);

/// Controls 0..n-1, target n; U applied iff every control is 1. Needs d > n and
/// the ancilla prepared in |0>_x.
InteractionSequence generalized_toffoli(std::size_t n, const Matrix& u, QuditDim d);

/// Controls 0..n-1, target n; phase e^{i theta ((sum q) mod d) q_t}. Ancilla in |0>_x.
InteractionSequence mod_d_phase_gate(double theta, std::size_t n, QuditDim d);

/// Qubits j=0, k=1; C^j_k R(theta) for any real theta. Ancilla in |0>_x.
InteractionSequence single_pair_arbitrary_rotation(double theta, QuditDim d);

/// Worst phase distance among the two generator identities for Z (x) S_z:
///   exp(-i theta Z (x) S_z) vs (e^{-i theta s Z} (x) I) C(R_d(theta), R_d(-theta)),
///   C(R_d(theta), R_d(-theta)) (I (x) R_d(-theta)) vs C(I, R_d(-2 theta)).
double hamiltonian_generator_check(double theta, QuditDim d);

/// Naive interaction counts: four per controlled rotation.
inline std::size_t naive_fan_one_target_count(std::size_t n) { return 4 * n; }
inline std::size_t naive_fan_bipartite_count(std::size_t n, std::size_t m) { return 4 * n * m; }

}  // namespace amqc::qudit
