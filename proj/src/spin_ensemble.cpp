#include "amqc/spin_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "amqc/error.hpp"

namespace amqc::spin {

namespace {

constexpr std::size_t kMaxDenseQubits = 10;

void require_dense(EnsembleSize n, std::size_t limit, const char* what) {
  if (static_cast<std::size_t>(n.value()) > limit) {
    throw Error(ErrorKind::ResourceLimit, std::string(what) + ": N=" + std::to_string(n.value()) +
                                              " exceeds the dense limit of " + std::to_string(limit));
  }
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

}  // namespace

EnsembleSize::EnsembleSize(std::int64_t n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "ensemble size must be >= 1, got " + std::to_string(n));
}

cplx stereo_from_angles(double theta, double phi) { return -std::polar(1.0, -phi) * std::tan(theta / 2.0); }

Matrix su2_displacement(cplx zeta) {
  const double norm = 1.0 / std::sqrt(1.0 + std::norm(zeta));
  Matrix m(2, 2);
  // Basis (|0>, |1>): s+ = |0><1|, s- = |1><0|.
  m << 1.0, zeta, -std::conj(zeta), 1.0;
  return norm * m;
}

Matrix su2_displacement_angles(double theta, double phi) {
  const Matrix gen = std::sin(phi) * pauli_x() - std::cos(phi) * pauli_y();
  return expi_hermitian(gen, theta / 2.0);
}

Matrix ensemble_displacement(cplx zeta, EnsembleSize n) {
  require_dense(n, kMaxDenseQubits, "ensemble_displacement");
  const Matrix one = su2_displacement(zeta);
  Matrix out = Matrix::Ones(1, 1);
  for (std::int64_t i = 0; i < n.value(); ++i) out = kron(out, one);
  return out;
}

Matrix collective(const Matrix& mu, EnsembleSize n) {
  require_dense(n, kMaxDenseQubits, "collective");
  const auto count = static_cast<std::size_t>(n.value());
  const Matrix eye2 = identity(2);
  Matrix sum = Matrix::Zero(std::int64_t{1} << count, std::int64_t{1} << count);
  for (std::size_t j = 0; j < count; ++j) {
    Matrix term = Matrix::Ones(1, 1);
    for (std::size_t i = 0; i < count; ++i) term = kron(term, i == j ? mu : eye2);
    sum += term;
  }
  return sum;
}

StateVector qubit_coherent_state(cplx zeta) {
  StateVector v(2);
  v << zeta, 1.0;
  return v / std::sqrt(1.0 + std::norm(zeta));
}

Step displace(cplx z, cplx w) {
  const cplx den = 1.0 - z * std::conj(w);
  if (std::abs(den) < 1e-300 || !std::isfinite(std::abs(z))) {
    throw Error(ErrorKind::SingularComposition, "displacement drives the label to the south pole");
  }
  return {(z + w) / den, std::arg(den)};
}

OriginComposition compose_on_origin(cplx z1, cplx z2, EnsembleSize n) {
  const Step s = displace(z1, z2);
  return {s.zeta, std::polar(1.0, n.as_double() * s.qubit_phase)};
}

cplx coherent_overlap(cplx z1, cplx z2, EnsembleSize n) {
  // |1 + z1* z2|^2 = (1 + |z1|^2)(1 + |z2|^2) - |z1 - z2|^2.
  const double gap = std::norm(z1 - z2) / ((1.0 + std::norm(z1)) * (1.0 + std::norm(z2)));
  const double log_abs = 0.5 * std::log1p(-gap);
  const double arg = std::arg(1.0 + std::conj(z1) * z2);
  return std::polar(std::exp(n.as_double() * log_abs), n.as_double() * arg);
}

double coherent_fidelity(cplx z1, cplx z2, EnsembleSize n) {
  const double gap = std::norm(z1 - z2) / ((1.0 + std::norm(z1)) * (1.0 + std::norm(z2)));
  return std::exp(n.as_double() * std::log1p(-gap));
}

double coherent_infidelity(cplx z1, cplx z2, EnsembleSize n) {
  const double gap = std::norm(z1 - z2) / ((1.0 + std::norm(z1)) * (1.0 + std::norm(z2)));
  return -std::expm1(n.as_double() * std::log1p(-gap));
}

double max_loop_eta() { return std::sqrt(2.0) - 1.0; }

LoopSolution loop_close(double eta) {
  if (eta == 0.0) return {};
  const double a = std::abs(eta);
  if (a > max_loop_eta() * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorKind::LoopUnclosable,
                "|eta|=" + std::to_string(a) + " exceeds sqrt(2)-1; the closing displacement is complex");
  }
  const double e2 = eta * eta;
  const double disc = std::max(0.0, e2 * e2 - 6.0 * e2 + 1.0);
  // (1 - eta^2 - sqrt(disc)) / (2 eta), rationalised to avoid cancellation at small eta.
  const double tau = 2.0 * eta / (1.0 - e2 + std::sqrt(disc));
  const double num = 2.0 * eta * tau + tau * tau - e2;
  const double den = 1.0 + 2.0 * eta * tau - e2 * tau * tau;
  return {eta, tau, std::atan(num / den)};
}

double eta_for_phase(double target, EnsembleSize n) {
  const auto total = [&](double eta) { return n.as_double() * loop_close(eta).phi_t; };
  const double hi_eta = max_loop_eta();
  if (target <= 0.0 || target > total(hi_eta)) {
    throw Error(ErrorKind::InvalidArgument, "target phase " + std::to_string(target) + " is not reachable at N=" +
                                                std::to_string(n.value()));
  }
  constexpr int kSamples = 256;
  double prev = 0.0;
  for (int i = 1; i <= kSamples; ++i) {
    const double v = total(hi_eta * i / kSamples);
    if (v <= prev) throw Error(ErrorKind::InvalidArgument, "loop phase is not monotone in eta");
    prev = v;
  }
  double lo = 0.0, hi = hi_eta;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

cplx SpinBranch::total_amplitude(EnsembleSize n) const {
  return amplitude * std::polar(1.0, n.as_double() * qubit_phase);
}

SpinBranchState::SpinBranchState(std::size_t n_qubits, EnsembleSize n, std::uint64_t bits)
    : n_qubits_(n_qubits), n_(n) {
  if (bits >= (std::uint64_t{1} << n_qubits)) throw Error(ErrorKind::InvalidArgument, "register bits out of range");
  branches_.emplace(bits, SpinBranch{});
}

SpinBranchState::SpinBranchState(std::size_t n_qubits, EnsembleSize n, const StateVector& reg)
    : n_qubits_(n_qubits), n_(n) {
  if (reg.size() != (std::int64_t{1} << n_qubits)) {
    throw Error(ErrorKind::InvalidArgument, "register state has the wrong dimension");
  }
  for (Eigen::Index b = 0; b < reg.size(); ++b) {
    if (reg(b) != cplx{}) branches_.emplace(static_cast<std::uint64_t>(b), SpinBranch{{}, 0.0, reg(b)});
  }
}

void SpinBranchState::apply_controlled(std::size_t qubit, cplx zeta) {
  if (qubit >= n_qubits_) throw Error(ErrorKind::InvalidArgument, "controlled displacement: qubit out of range");
  const unsigned shift = static_cast<unsigned>(n_qubits_ - 1 - qubit);
  for (auto& [bits, br] : branches_) {
    const cplx w = ((bits >> shift) & 1U) ? -zeta : zeta;
    const Step s = displace(br.zeta, w);
    br.zeta = s.zeta;
    br.qubit_phase += s.qubit_phase;
  }
}

double SpinBranchState::norm() const {
  double total = 0.0;
  for (const auto& [bits, br] : branches_) total += std::norm(br.amplitude) * coherent_fidelity(br.zeta, br.zeta, n_);
  return total;
}

double SpinBranchState::largest_schmidt_weight() const {
  std::vector<const SpinBranch*> list;
  for (const auto& [bits, br] : branches_) list.push_back(&br);
  const auto k = static_cast<Eigen::Index>(list.size());
  // Reduced register state rho_ab = c_a c_b* <anc_b|anc_a>.
  Matrix rho(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const cplx ca = list[a]->total_amplitude(n_);
      const cplx cb = list[b]->total_amplitude(n_);
      rho(a, b) = ca * std::conj(cb) * coherent_overlap(list[b]->zeta, list[a]->zeta, n_);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

GateReport run_spin_sequence(const SpinSequence& seq, EnsembleSize n) {
  const std::uint64_t dim = std::uint64_t{1} << seq.n_qubits;
  GateReport report;
  report.interaction_count = seq.elements.size();
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t bits = 0; bits < dim; ++bits) {
    SpinBranchState s(seq.n_qubits, n, bits);
    for (const auto& e : seq.elements) s.apply_controlled(e.qubit, e.zeta);
    const SpinBranch& br = s.branches().at(bits);
    const auto i = static_cast<Eigen::Index>(bits);
    u(i, i) = br.total_amplitude(n) * coherent_overlap(cplx{}, br.zeta, n);
    report.ancilla_return_fidelity = std::min(report.ancilla_return_fidelity, coherent_fidelity(cplx{}, br.zeta, n));
  }
  const StateVector plus = StateVector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(double(dim)));
  SpinBranchState sup(seq.n_qubits, n, plus);
  for (const auto& e : seq.elements) sup.apply_controlled(e.qubit, e.zeta);
  report.residual_entanglement = std::max(0.0, 1.0 - sup.largest_schmidt_weight());
  if (report.residual_entanglement < kDisentangledTol && 1.0 - report.ancilla_return_fidelity < kDisentangledTol) {
    report.register_unitary = std::move(u);
  }
  return report;
}

SpinSequence spin_two_qubit_sequence(double eta) {
  const LoopSolution loop = loop_close(eta);
  return {2,
          {
              {0, cplx{loop.eta, 0.0}},
              {1, cplx{0.0, loop.tau}},
              {0, cplx{-loop.tau, 0.0}},
              {1, cplx{0.0, -loop.eta}},
          }};
}

GateReport spin_two_qubit_gate(double eta, EnsembleSize n) { return run_spin_sequence(spin_two_qubit_sequence(eta), n); }

SpinSequence spin_fan_sequence(std::span<const double> xs, std::span<const double> ps, EnsembleSize n) {
  if (xs.empty() || ps.empty()) throw Error(ErrorKind::InvalidArgument, "spin fan: need at least one control and target");
  const double scale = 1.0 / std::sqrt(2.0 * n.as_double());
  const std::size_t nc = xs.size();
  SpinSequence seq{nc + ps.size(), {}};
  for (std::size_t k = 0; k < nc; ++k) seq.elements.push_back({k, cplx{xs[k] * scale, 0.0}});
  for (std::size_t j = 0; j < ps.size(); ++j) seq.elements.push_back({nc + j, cplx{0.0, ps[j] * scale}});
  for (std::size_t k = 0; k < nc; ++k) seq.elements.push_back({k, cplx{-xs[k] * scale, 0.0}});
  for (std::size_t j = 0; j < ps.size(); ++j) seq.elements.push_back({nc + j, cplx{0.0, -ps[j] * scale}});
  return seq;
}

FanReport fan_sequence_simulate(std::span<const double> xs, std::span<const double> ps, EnsembleSize n) {
  const SpinSequence seq = spin_fan_sequence(xs, ps, n);
  FanReport out;
  out.gate = run_spin_sequence(seq, n);
  const std::size_t nc = xs.size();
  const std::uint64_t dim = std::uint64_t{1} << seq.n_qubits;
  for (std::uint64_t bits = 0; bits < dim; ++bits) {
    SpinBranchState s(seq.n_qubits, n, bits);
    for (const auto& e : seq.elements) s.apply_controlled(e.qubit, e.zeta);
    const SpinBranch& br = s.branches().at(bits);
    const auto z_of = [&](std::size_t q) { return ((bits >> (seq.n_qubits - 1 - q)) & 1U) ? -1.0 : 1.0; };
    double target = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j)
      for (std::size_t k = 0; k < nc; ++k) target += xs[k] * ps[j] * z_of(k) * z_of(nc + j);
    const double phase = n.as_double() * br.qubit_phase;
    out.max_phase_error = std::max(out.max_phase_error, std::abs(wrap_angle(phase - target)));
    out.worst_infidelity = std::max(out.worst_infidelity, coherent_infidelity(cplx{}, br.zeta, n));
    if (bits == 0) {
      out.extremal_phase = phase;
      out.extremal_label = br.zeta;
    }
  }
  const double scale = 1.0 / std::sqrt(2.0 * n.as_double());
  double angle = 0.0;
  for (double x : xs) angle += std::atan(x * scale);
  out.extremal_zeta_n = std::tan(angle) / scale;
  return out;
}

double spin_generator_check(double theta, double phi, EnsembleSize n) {
  constexpr std::size_t kLimit = 8;
  require_dense(n, kLimit, "spin_generator_check");
  const auto count = static_cast<std::size_t>(n.value());
  const Matrix jx = collective(pauli_x(), n);
  const Matrix jy = collective(pauli_y(), n);

  const Matrix h = kron(pauli_z(), std::sin(phi) * jx - std::cos(phi) * jy);
  const Matrix generated = expi_hermitian(h, theta / 2.0);
  Matrix plus = Matrix::Ones(1, 1), minus = Matrix::Ones(1, 1);
  const Matrix dp = su2_displacement_angles(theta, phi), dm = su2_displacement_angles(-theta, phi);
  for (std::size_t i = 0; i < count; ++i) {
    plus = kron(plus, dp);
    minus = kron(minus, dm);
  }
  const double first = phase_distance(generated, embed_controlled(0, 1, std::size_t{1} << count, plus, minus));

  const Matrix v = phase_gate(kPi / 2.0) * hadamard();
  Matrix u = Matrix::Ones(1, 1);
  for (std::size_t i = 0; i < count; ++i) u = kron(u, v);
  const double second = phase_distance(u.adjoint() * expi_hermitian(jx, theta) * u, expi_hermitian(jy, theta));
  return std::max(first, second);
}

}  // namespace amqc::spin
