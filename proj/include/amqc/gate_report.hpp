#pragma once

#include <cstddef>
#include <optional>

#include "amqc/tensor_core.hpp"

namespace amqc {

// Outcome of running an ancilla-mediated sequence over every register basis
// input.
struct GateReport {
  // 2^n x 2^n register gate; set only when the ancilla disentangles and
  // returns to its initial state on every input.
  std::optional<Matrix> register_unitary;
  // Worst-case |<anc_init|anc_final>|^2 over register basis inputs.
  double ancilla_return_fidelity = 1.0;
  // Worst-case 1 - (largest Schmidt weight) of the register/ancilla split.
  double residual_entanglement = 0.0;
  std::size_t interaction_count = 0;
};

// Threshold below which the register/ancilla split counts as a product.
inline constexpr double kDisentangledTol = 1e-10;

}  // namespace amqc
