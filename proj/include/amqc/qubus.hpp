#pragma once

// Field-mode bus tracked purely by displacement labels and geometric phases.
//
// A bus state is e^{i phase} D(x,p)|psi_0>. Labels are kept as integer
// combinations of the displacements actually applied, so a sequence that
// undoes every displacement returns to its starting label exactly, with no
// floating-point residue.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "amqc/gate_report.hpp"
#include "amqc/tensor_core.hpp"

namespace amqc::qubus {

struct FieldLabel {
  double x = 0.0;
  double p = 0.0;

  FieldLabel operator-() const { return {-x, -p}; }
  bool operator==(const FieldLabel&) const = default;
};

/// D(l2) D(l1) = e^{i phi} D(l1 + l2) with phi = (x1 p2 - p1 x2) / 2.
std::pair<FieldLabel, cplx> compose_field(FieldLabel l1, FieldLabel l2);

/// Net displacement as an integer combination of distinct applied labels.
class SymbolicLabel {
 public:
  SymbolicLabel() = default;
  explicit SymbolicLabel(FieldLabel start);

  void add(FieldLabel w, int sign = 1);
  FieldLabel value() const;
  bool operator==(const SymbolicLabel& o) const;

 private:
  std::vector<std::pair<FieldLabel, std::int64_t>> terms_;
};

struct FieldBranch {
  SymbolicLabel label;
  double phase = 0.0;
  cplx amplitude{1.0, 0.0};
};

/// <bus a|bus b> for e^{i phase} D(label)|vacuum> states.
cplx field_overlap(FieldLabel la, double phase_a, FieldLabel lb, double phase_b);

struct FieldInteraction {
  std::size_t qubit = 0;
  FieldLabel label;
};

/// Symmetric-polarity interactions C(D(l), D(-l)), in application order.
struct FieldSequence {
  std::size_t n_qubits = 0;
  std::vector<FieldInteraction> elements;
};

class FieldBranchState {
 public:
  FieldBranchState(std::size_t n_qubits, const StateVector& reg, FieldLabel bus_start = {});

  void apply(const FieldInteraction& i);

  const std::map<std::uint64_t, FieldBranch>& branches() const noexcept { return branches_; }
  FieldLabel bus_start() const noexcept { return start_; }

  /// True when every branch label equals the starting label exactly.
  bool returned_exactly() const;

  double largest_schmidt_weight() const;

 private:
  std::size_t n_qubits_;
  FieldLabel start_;
  std::map<std::uint64_t, FieldBranch> branches_;
};

GateReport run_field_sequence(const FieldSequence& seq, FieldLabel bus_start = {});

/// True when every register basis input brings the bus back to its start
/// label exactly.
bool field_sequence_closes(const FieldSequence& seq, FieldLabel bus_start = {});

/// D^k(0,-p) D^j(-x,0) D^k(0,p) D^j(x,0) with j = 0, k = 1.
FieldSequence field_two_qubit_sequence(double x, double p);

/// Controls 0..n-1 displaced by (x_k, 0), targets n..n+m-1 by (0, p_j).
FieldSequence field_fan_sequence(std::span<const double> xs, std::span<const double> ps);

/// exp(i x p Z (x) Z) with the bus back at its start.
GateReport field_two_qubit(double x, double p, FieldLabel bus_start = {});

/// prod_j prod_k exp(i x_k p_j Z_k (x) Z_j) in 2(n+m) interactions.
GateReport field_fan(std::span<const double> xs, std::span<const double> ps, FieldLabel bus_start = {});

/// Local rotations R(2 theta) on both qubits; they map exp(i theta Z (x) Z) to
/// e^{i theta} CR(4 theta).
Matrix cz_local_correction(double theta);

}  // namespace amqc::qubus
