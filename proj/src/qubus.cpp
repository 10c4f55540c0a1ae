#include "amqc/qubus.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "amqc/error.hpp"

namespace amqc::qubus {

std::pair<FieldLabel, cplx> compose_field(FieldLabel l1, FieldLabel l2) {
  const double phi = 0.5 * (l1.x * l2.p - l1.p * l2.x);
  return {{l1.x + l2.x, l1.p + l2.p}, std::polar(1.0, phi)};
}

SymbolicLabel::SymbolicLabel(FieldLabel start) {
  if (start.x != 0.0 || start.p != 0.0) terms_.push_back({start, 1});
}

void SymbolicLabel::add(FieldLabel w, int sign) {
  if (w.x == 0.0 && w.p == 0.0) return;
  for (auto& [term, coeff] : terms_) {
    if (term == w) {
      coeff += sign;
      return;
    }
    if (term == -w) {
      coeff -= sign;
      return;
    }
  }
  terms_.push_back({w, sign});
}

FieldLabel SymbolicLabel::value() const {
  FieldLabel v;
  for (const auto& [term, coeff] : terms_) {
    v.x += static_cast<double>(coeff) * term.x;
    v.p += static_cast<double>(coeff) * term.p;
  }
  return v;
}

bool SymbolicLabel::operator==(const SymbolicLabel& o) const {
  const auto coeff_in = [](const auto& terms, FieldLabel t) -> std::int64_t {
    for (const auto& [term, c] : terms) {
      if (term == t) return c;
      if (term == -t) return -c;
    }
    return 0;
  };
  for (const auto& [t, c] : terms_)
    if (coeff_in(o.terms_, t) != c) return false;
  for (const auto& [t, c] : o.terms_)
    if (coeff_in(terms_, t) != c) return false;
  return true;
}

cplx field_overlap(FieldLabel la, double phase_a, FieldLabel lb, double phase_b) {
  // D(-a) D(b) = e^{i (xa pb - pa xb)/2} D(b - a), and <0|D(l)|0> = e^{-(x^2 + p^2)/4}.
  const double dx = lb.x - la.x, dp = lb.p - la.p;
  const double phi = phase_b - phase_a + 0.5 * (la.x * lb.p - la.p * lb.x);
  return std::polar(std::exp(-(dx * dx + dp * dp) / 4.0), phi);
}

FieldBranchState::FieldBranchState(std::size_t n_qubits, const StateVector& reg, FieldLabel bus_start)
    : n_qubits_(n_qubits), start_(bus_start) {
  if (reg.size() != (std::int64_t{1} << n_qubits)) throw Error(ErrorKind::InvalidArgument, "register state has the wrong dimension");
  for (Eigen::Index b = 0; b < reg.size(); ++b) {
    if (reg(b) != cplx{}) branches_.emplace(static_cast<std::uint64_t>(b), FieldBranch{SymbolicLabel(bus_start), 0.0, reg(b)});
  }
}

void FieldBranchState::apply(const FieldInteraction& i) {
  if (i.qubit >= n_qubits_) throw Error(ErrorKind::InvalidArgument, "field interaction: qubit out of range");
  const unsigned shift = static_cast<unsigned>(n_qubits_ - 1 - i.qubit);
  for (auto& [bits, br] : branches_) {
    const int sign = ((bits >> shift) & 1U) ? -1 : 1;
    const FieldLabel w{sign * i.label.x, sign * i.label.p};
    const auto [next, phase] = compose_field(br.label.value(), w);
    br.phase += std::arg(phase);
    br.label.add(i.label, sign);
  }
}

bool FieldBranchState::returned_exactly() const {
  const SymbolicLabel start(start_);
  return std::all_of(branches_.begin(), branches_.end(), [&](const auto& kv) { return kv.second.label == start; });
}

double FieldBranchState::largest_schmidt_weight() const {
  std::vector<const FieldBranch*> list;
  for (const auto& [bits, br] : branches_) list.push_back(&br);
  const auto k = static_cast<Eigen::Index>(list.size());
  Matrix rho(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      rho(a, b) = list[a]->amplitude * std::conj(list[b]->amplitude) *
                  field_overlap(list[b]->label.value(), list[b]->phase, list[a]->label.value(), list[a]->phase);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

namespace {

StateVector basis(std::size_t n_qubits, std::uint64_t bits) {
  StateVector v = StateVector::Zero(std::int64_t{1} << n_qubits);
  v(static_cast<Eigen::Index>(bits)) = 1.0;
  return v;
}

}  // namespace

GateReport run_field_sequence(const FieldSequence& seq, FieldLabel bus_start) {
  const std::uint64_t dim = std::uint64_t{1} << seq.n_qubits;
  GateReport report;
  report.interaction_count = seq.elements.size();
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t bits = 0; bits < dim; ++bits) {
    FieldBranchState s(seq.n_qubits, basis(seq.n_qubits, bits), bus_start);
    for (const auto& e : seq.elements) s.apply(e);
    const FieldBranch& br = s.branches().at(bits);
    const cplx back = br.label == SymbolicLabel(bus_start) ? std::polar(1.0, br.phase)
                                                          : field_overlap(bus_start, 0.0, br.label.value(), br.phase);
    u(static_cast<Eigen::Index>(bits), static_cast<Eigen::Index>(bits)) = back;
    report.ancilla_return_fidelity = std::min(report.ancilla_return_fidelity, std::norm(back));
  }
  const StateVector plus = StateVector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(double(dim)));
  FieldBranchState sup(seq.n_qubits, plus, bus_start);
  for (const auto& e : seq.elements) sup.apply(e);
  report.residual_entanglement = std::max(0.0, 1.0 - sup.largest_schmidt_weight());
  if (report.residual_entanglement < kDisentangledTol && 1.0 - report.ancilla_return_fidelity < kDisentangledTol) {
    report.register_unitary = std::move(u);
  }
  return report;
}

bool field_sequence_closes(const FieldSequence& seq, FieldLabel bus_start) {
  const std::uint64_t dim = std::uint64_t{1} << seq.n_qubits;
  for (std::uint64_t bits = 0; bits < dim; ++bits) {
    FieldBranchState s(seq.n_qubits, basis(seq.n_qubits, bits), bus_start);
    for (const auto& e : seq.elements) s.apply(e);
    if (!s.returned_exactly()) return false;
  }
  return true;
}

FieldSequence field_two_qubit_sequence(double x, double p) {
  return {2, {{0, {x, 0.0}}, {1, {0.0, p}}, {0, {-x, 0.0}}, {1, {0.0, -p}}}};
}

FieldSequence field_fan_sequence(std::span<const double> xs, std::span<const double> ps) {
  if (xs.empty() || ps.empty()) throw Error(ErrorKind::InvalidArgument, "field fan: need at least one control and target");
  const std::size_t n = xs.size();
  FieldSequence seq{n + ps.size(), {}};
  for (std::size_t k = 0; k < n; ++k) seq.elements.push_back({k, {xs[k], 0.0}});
  for (std::size_t j = 0; j < ps.size(); ++j) seq.elements.push_back({n + j, {0.0, ps[j]}});
  for (std::size_t k = 0; k < n; ++k) seq.elements.push_back({k, {-xs[k], 0.0}});
  for (std::size_t j = 0; j < ps.size(); ++j) seq.elements.push_back({n + j, {0.0, -ps[j]}});
  return seq;
}

GateReport field_two_qubit(double x, double p, FieldLabel bus_start) {
  return run_field_sequence(field_two_qubit_sequence(x, p), bus_start);
}

GateReport field_fan(std::span<const double> xs, std::span<const double> ps, FieldLabel bus_start) {
  return run_field_sequence(field_fan_sequence(xs, ps), bus_start);
}

Matrix cz_local_correction(double theta) { return kron(phase_gate(2.0 * theta), phase_gate(2.0 * theta)); }

}  // namespace amqc::qubus
