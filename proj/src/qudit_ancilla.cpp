#include "amqc/qudit_ancilla.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "amqc/error.hpp"

namespace amqc::qudit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t register_dim(std::size_t n_qubits) { return std::size_t{1} << n_qubits; }

bool bit_of(std::size_t bits, std::size_t qubit, std::size_t n_qubits) {
  return (bits >> (n_qubits - 1 - qubit)) & 1U;
}

void require_qubit(std::size_t q, std::size_t n_qubits, const char* what) {
  if (q >= n_qubits) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": qubit " + std::to_string(q) +
                                                " out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

// Applies blocks[bit] to the ancilla block of every register basis state.
void apply_blockwise(HybridState& s, std::size_t qubit, const Matrix& on_zero, const Matrix& on_one,
                     bool skip_zero) {
  const auto d = static_cast<Eigen::Index>(s.anc_dim().value());
  auto& amps = s.amplitudes();
  for (std::size_t bits = 0; bits < register_dim(s.n_qubits()); ++bits) {
    const bool one = bit_of(bits, qubit, s.n_qubits());
    if (!one && skip_zero) continue;
    auto block = amps.segment(static_cast<Eigen::Index>(bits) * d, d);
    block = (one ? on_one : on_zero) * block;
  }
}

}  // namespace

std::size_t InteractionSequence::interaction_count() const {
  return static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(), [](const auto& e) {
    return !std::holds_alternative<AncillaRotation>(e);
  }));
}

HybridState::HybridState(std::size_t n_qubits, QuditDim d, StateVector amplitudes)
    : n_qubits_(n_qubits), d_(d), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != register_dim(n_qubits) * d.size()) {
    throw Error(ErrorKind::InvalidArgument, "HybridState: amplitude count does not match 2^n * d");
  }
}

HybridState HybridState::basis_product(std::size_t n_qubits, std::size_t bits, const StateVector& anc) {
  const auto d = anc.size();
  StateVector amps = StateVector::Zero(static_cast<Eigen::Index>(register_dim(n_qubits)) * d);
  amps.segment(static_cast<Eigen::Index>(bits) * d, d) = anc;
  return HybridState(n_qubits, QuditDim(static_cast<int>(d)), std::move(amps));
}

Matrix HybridState::as_matrix() const {
  const auto rows = static_cast<Eigen::Index>(register_dim(n_qubits_));
  const auto cols = static_cast<Eigen::Index>(d_.value());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) m.row(r) = amps_.segment(r * cols, cols).transpose();
  return m;
}

StateVector position_state(QuditDim d, std::int64_t m) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(d.value()));
  v(static_cast<Eigen::Index>(mod(m, d.value()))) = 1.0;
  return v;
}

HybridState apply_interaction(const HybridState& s, const Interaction& i, PhaseConvention conv) {
  HybridState out = s;
  apply_element(out, i, conv);
  return out;
}

void apply_element(HybridState& s, const SequenceElement& e, PhaseConvention conv) {
  const QuditDim d = s.anc_dim();
  std::visit(
      overloaded{
          [&](const Interaction& i) {
            require_qubit(i.qubit, s.n_qubits(), "interaction");
            if (i.polarity == Polarity::ApplyOnOne) {
              apply_blockwise(s, i.qubit, Matrix(), displacement(d, i.label, conv), true);
            } else {
              apply_blockwise(s, i.qubit, displacement(d, i.label, conv), displacement(d, -i.label, conv),
                              false);
            }
          },
          [&](const ControlledRotation& c) {
            require_qubit(c.control, s.n_qubits(), "controlled rotation");
            apply_blockwise(s, c.control, Matrix(), rotation(d, c.theta), true);
          },
          [&](const AncillaRotation& r) {
            const Matrix rot = rotation(d, r.theta);
            const auto dd = static_cast<Eigen::Index>(d.value());
            for (std::size_t bits = 0; bits < register_dim(s.n_qubits()); ++bits) {
              auto block = s.amplitudes().segment(static_cast<Eigen::Index>(bits) * dd, dd);
              block = rot * block;
            }
          },
          [&](const ProjectedGate& g) {
            require_qubit(g.target, s.n_qubits(), "projected gate");
            if (g.u.rows() != 2 || g.u.cols() != 2) {
              throw Error(ErrorKind::InvalidArgument, "projected gate: U must be 2x2");
            }
            const auto dd = static_cast<Eigen::Index>(d.value());
            const auto level = static_cast<Eigen::Index>(mod(g.level, d.value()));
            const std::size_t tmask = std::size_t{1} << (s.n_qubits() - 1 - g.target);
            auto& amps = s.amplitudes();
            for (std::size_t bits = 0; bits < register_dim(s.n_qubits()); ++bits) {
              if (bits & tmask) continue;
              const auto i0 = static_cast<Eigen::Index>(bits) * dd + level;
              const auto i1 = static_cast<Eigen::Index>(bits | tmask) * dd + level;
              const cplx a0 = amps(i0), a1 = amps(i1);
              amps(i0) = g.u(0, 0) * a0 + g.u(0, 1) * a1;
              amps(i1) = g.u(1, 0) * a0 + g.u(1, 1) * a1;
            }
          },
      },
      e);
}

HybridState run(const InteractionSequence& seq, HybridState s) {
  if (s.n_qubits() != seq.n_qubits || s.anc_dim() != seq.d) {
    throw Error(ErrorKind::InvalidArgument, "run: state dimensions do not match the sequence");
  }
  check_convention(seq.d, seq.conv);
  for (const auto& e : seq.elements) apply_element(s, e, seq.conv);
  return s;
}

Matrix sequence_unitary(const InteractionSequence& seq) {
  const std::size_t dim = register_dim(seq.n_qubits) * seq.d.size();
  Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector e = StateVector::Zero(static_cast<Eigen::Index>(dim));
    e(static_cast<Eigen::Index>(col)) = 1.0;
    u.col(static_cast<Eigen::Index>(col)) = run(seq, HybridState(seq.n_qubits, seq.d, std::move(e))).amplitudes();
  }
  return u;
}

GateReport extract_register_gate(const InteractionSequence& seq, const StateVector& anc_init) {
  if (anc_init.size() != static_cast<Eigen::Index>(seq.d.value())) {
    throw Error(ErrorKind::InvalidArgument, "extract_register_gate: ancilla state has wrong dimension");
  }
  const std::size_t rdim = register_dim(seq.n_qubits);
  GateReport report;
  report.interaction_count = seq.interaction_count();
  Matrix unitary(static_cast<Eigen::Index>(rdim), static_cast<Eigen::Index>(rdim));
  for (std::size_t bits = 0; bits < rdim; ++bits) {
    const Matrix out = run(seq, HybridState::basis_product(seq.n_qubits, bits, anc_init)).as_matrix();
    // <anc_init| applied on the ancilla factor.
    const StateVector returned = out * anc_init.conjugate();
    unitary.col(static_cast<Eigen::Index>(bits)) = returned;
    report.ancilla_return_fidelity = std::min(report.ancilla_return_fidelity, returned.squaredNorm());
    Eigen::JacobiSVD<Matrix> svd(out);
    const double top = svd.singularValues()(0);
    report.residual_entanglement = std::max(report.residual_entanglement, std::max(0.0, 1.0 - top * top));
  }
  // Basis inputs stay product for diagonal gates; the uniform superposition does not.
  {
    const StateVector plus = StateVector::Constant(static_cast<Eigen::Index>(rdim), 1.0 / std::sqrt(double(rdim)));
    const Matrix out = run(seq, HybridState(seq.n_qubits, seq.d, kron(plus, anc_init))).as_matrix();
    Eigen::JacobiSVD<Matrix> svd(out);
    const double top = svd.singularValues()(0);
    report.residual_entanglement = std::max(report.residual_entanglement, std::max(0.0, 1.0 - top * top));
  }
  if (report.residual_entanglement < kDisentangledTol && 1.0 - report.ancilla_return_fidelity < kDisentangledTol) {
    report.register_unitary = std::move(unitary);
  }
  return report;
}

InteractionSequence two_qubit_sequence(QuditDim d, PhaseConvention conv, std::size_t n_qubits, std::size_t j,
                                       std::size_t k, std::int64_t x, std::int64_t p, Polarity polarity) {
  if (j == k) throw Error(ErrorKind::InvalidArgument, "two_qubit_sequence: j and k must differ");
  require_qubit(j, n_qubits, "two_qubit_sequence");
  require_qubit(k, n_qubits, "two_qubit_sequence");
  check_convention(d, conv);
  InteractionSequence seq{n_qubits, d, conv, {}};
  seq.elements = {
      Interaction{j, {x, 0}, polarity},
      Interaction{k, {0, p}, polarity},
      Interaction{j, {-x, 0}, polarity},
      Interaction{k, {0, -p}, polarity},
  };
  return seq;
}

InteractionSequence fan_one_target(QuditDim d, PhaseConvention conv, std::span<const std::int64_t> xs,
                                   std::int64_t p) {
  const std::int64_t ps[] = {p};
  return fan_bipartite(d, conv, xs, ps);
}

InteractionSequence fan_bipartite(QuditDim d, PhaseConvention conv, std::span<const std::int64_t> xs,
                                  std::span<const std::int64_t> ps) {
  if (xs.empty() || ps.empty()) throw Error(ErrorKind::InvalidArgument, "fan: need at least one control and target");
  check_convention(d, conv);
  const std::size_t n = xs.size();
  InteractionSequence seq{n + ps.size(), d, conv, {}};
  auto& el = seq.elements;
  for (std::size_t k = 0; k < n; ++k) el.emplace_back(Interaction{k, {xs[k], 0}});
  for (std::size_t j = 0; j < ps.size(); ++j) el.emplace_back(Interaction{n + j, {0, ps[j]}});
  for (std::size_t k = 0; k < n; ++k) el.emplace_back(Interaction{k, {-xs[k], 0}});
  for (std::size_t j = 0; j < ps.size(); ++j) el.emplace_back(Interaction{n + j, {0, -ps[j]}});
  return seq;
}

InteractionSequence generalized_toffoli(std::size_t n, const Matrix& u, QuditDim d) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "generalized_toffoli: need at least one control");
  if (static_cast<std::size_t>(d.value()) <= n) {
    throw Error(ErrorKind::DimensionTooSmall, "generalized_toffoli: d=" + std::to_string(d.value()) +
                                                  " cannot count " + std::to_string(n) + " controls");
  }
  if (!is_unitary(u) || u.rows() != 2) throw Error(ErrorKind::InvalidArgument, "generalized_toffoli: U must be a 2x2 unitary");
  InteractionSequence seq{n + 1, d, PhaseConvention::HalfRoot, {}};
  for (std::size_t k = 0; k < n; ++k) seq.elements.emplace_back(Interaction{k, {1, 0}});
  seq.elements.emplace_back(ProjectedGate{n, static_cast<std::int64_t>(n), u});
  for (std::size_t k = 0; k < n; ++k) seq.elements.emplace_back(Interaction{k, {-1, 0}});
  return seq;
}

InteractionSequence mod_d_phase_gate(double theta, std::size_t n, QuditDim d) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "mod_d_phase_gate: need at least one control");
  InteractionSequence seq{n + 1, d, PhaseConvention::HalfRoot, {}};
  for (std::size_t k = 0; k < n; ++k) seq.elements.emplace_back(Interaction{k, {1, 0}});
  seq.elements.emplace_back(ControlledRotation{n, theta});
  for (std::size_t k = 0; k < n; ++k) seq.elements.emplace_back(Interaction{k, {-1, 0}});
  return seq;
}

InteractionSequence single_pair_arbitrary_rotation(double theta, QuditDim d) {
  InteractionSequence seq{2, d, PhaseConvention::HalfRoot, {}};
  seq.elements = {
      Interaction{0, {1, 0}},
      ControlledRotation{1, theta},
      Interaction{0, {-1, 0}},
  };
  return seq;
}

double hamiltonian_generator_check(double theta, QuditDim d) {
  const auto dim = d.size();
  const Matrix z = pauli_z();
  const Matrix sz = spin_z(d);
  const double s = (d.value() - 1) / 2.0;

  // Z (x) S_z is diagonal, so its exponential is taken entrywise.
  const Matrix h = kron(z, sz);
  Matrix generated = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) generated(i, i) = std::polar(1.0, -theta * h(i, i).real());

  const Matrix local = kron(expi_hermitian(z, -theta * s), identity(dim));
  const Matrix split = embed_controlled(0, 1, dim, rotation(d, theta), rotation(d, -theta));
  const double first = phase_distance(generated, local * split);

  const Matrix corrected = split * kron(identity(2), rotation(d, -theta));
  const Matrix one_sided = embed_controlled(0, 1, dim, identity(dim), rotation(d, -2.0 * theta));
  const double second = phase_distance(corrected, one_sided);
  return std::max(first, second);
}

}  // namespace amqc::qudit
