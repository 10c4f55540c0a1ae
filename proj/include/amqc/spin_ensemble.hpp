#pragma once

// Spin-coherent-state ancilla: N qubits in the common product state
//   |zeta>_N = ((|1> + zeta |0>) / sqrt(1 + |zeta|^2))^{(x) N},
// with the north pole |1>^{(x) N} (zeta = 0) as phase-space origin.
//
// Displacements act per qubit as (I + zeta s+ - zeta* s-) / sqrt(1 + |zeta|^2).
// Applying D(w) to a labelled state |z> gives
//   D(w)|z> = ((1 - z w*) / |1 - z w*|)^N |(z + w) / (1 - z w*)>,
// so a branch is tracked exactly as (label, accumulated per-qubit phase,
// register amplitude) at O(1) cost in N.
//
// Collective operators use the Pauli-sum convention J_mu = sum_j mu_j, so
// [J_x, J_y] = 2i J_z.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "amqc/gate_report.hpp"
#include "amqc/tensor_core.hpp"

namespace amqc::spin {

class EnsembleSize {
 public:
  explicit EnsembleSize(std::int64_t n);
  std::int64_t value() const noexcept { return n_; }
  double as_double() const noexcept { return static_cast<double>(n_); }

 private:
  std::int64_t n_;
};

/// Stereographic label for the polar angle theta and azimuth phi:
/// zeta = -e^{-i phi} tan(theta / 2).
cplx stereo_from_angles(double theta, double phi);

/// Per-qubit displacement (I + zeta s+ - zeta* s-) / sqrt(1 + |zeta|^2).
Matrix su2_displacement(cplx zeta);

/// Per-qubit exp(i (theta/2)(sin(phi) X - cos(phi) Y)).
Matrix su2_displacement_angles(double theta, double phi);

/// N-fold tensor power of su2_displacement; dense, so N <= 10.
Matrix ensemble_displacement(cplx zeta, EnsembleSize n);

/// J_mu = sum_j mu_j for a single-qubit operator mu; dense, so N <= 10.
Matrix collective(const Matrix& mu, EnsembleSize n);

/// Single-qubit factor of |zeta>_N.
StateVector qubit_coherent_state(cplx zeta);

struct Step {
  cplx zeta;           // label after the displacement
  double qubit_phase;  // Arg(1 - z w*), acquired once per qubit
};

/// D(w) applied to |z>_N. Throws singular-composition when 1 - z w* = 0
/// (the displaced state would sit on the south pole).
Step displace(cplx z, cplx w);

struct OriginComposition {
  cplx zeta_out;
  cplx phase;  // ((1 - z1 z2*) / |1 - z1 z2*|)^N
};

/// D(z2) D(z1) |0>_N = phase |zeta_out>_N.
OriginComposition compose_on_origin(cplx z1, cplx z2, EnsembleSize n);

/// <z1|z2>_N, evaluated as exp(N log(.)) so that large N does not underflow
/// before the final exponential.
cplx coherent_overlap(cplx z1, cplx z2, EnsembleSize n);

/// |<z1|z2>_N|^2 via log1p; accurate when it is close to 1.
double coherent_fidelity(cplx z1, cplx z2, EnsembleSize n);

/// 1 - |<z1|z2>_N|^2 via expm1; keeps relative precision for tiny infidelities.
double coherent_infidelity(cplx z1, cplx z2, EnsembleSize n);

/// Closed rectangle-like loop D(-i eta) D(-tau) D(i tau) D(eta) on the sphere.
struct LoopSolution {
  double eta = 0.0;
  double tau = 0.0;
  double phi_t = 0.0;  // per-qubit phase; the ensemble phase is N * phi_t
};

/// tau(eta) and phi_t. Requires |eta| <= sqrt(2) - 1; eta = 0 gives the zero loop.
LoopSolution loop_close(double eta);

/// Largest |eta| for which the loop closes with real tau.
double max_loop_eta();

/// Smallest eta in (0, sqrt(2) - 1] with N * phi_t(eta) = target, by bisection.
/// Throws invalid-argument when the target is out of reach or phi_t is not
/// monotone on the sampled interval.
double eta_for_phase(double target, EnsembleSize n);

/// Label and phase of a branch; the ancilla factor is e^{i N qubit_phase} |zeta>_N.
struct SpinBranch {
  cplx zeta{0.0, 0.0};
  double qubit_phase = 0.0;
  cplx amplitude{1.0, 0.0};

  cplx total_amplitude(EnsembleSize n) const;
};

class SpinBranchState {
 public:
  /// Register basis state |bits> with the ancilla at the origin.
  SpinBranchState(std::size_t n_qubits, EnsembleSize n, std::uint64_t bits);

  /// Arbitrary register state with the ancilla at the origin; zero amplitudes
  /// are dropped.
  SpinBranchState(std::size_t n_qubits, EnsembleSize n, const StateVector& reg);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  EnsembleSize ensemble() const noexcept { return n_; }
  const std::map<std::uint64_t, SpinBranch>& branches() const noexcept { return branches_; }

  /// C(D(zeta), D(-zeta)) controlled by `qubit`.
  void apply_controlled(std::size_t qubit, cplx zeta);

  /// Total norm including the overlaps between non-orthogonal ancilla labels.
  /// Register basis states are orthogonal, so only diagonal terms survive.
  double norm() const;

  /// Largest eigenvalue of the reduced register state; 1 - this is the
  /// residual entanglement.
  double largest_schmidt_weight() const;

 private:
  std::size_t n_qubits_;
  EnsembleSize n_;
  std::map<std::uint64_t, SpinBranch> branches_;
};

/// One symmetric-polarity controlled displacement in a spin sequence.
struct SpinInteraction {
  std::size_t qubit = 0;
  cplx zeta;
};

struct SpinSequence {
  std::size_t n_qubits = 0;
  std::vector<SpinInteraction> elements;
};

/// Runs the sequence over every register basis input plus the uniform
/// superposition (for the entanglement witness).
GateReport run_spin_sequence(const SpinSequence& seq, EnsembleSize n);

/// D^k(-i eta) D^j(-tau) D^k(i tau) D^j(eta) with j = 0, k = 1.
SpinSequence spin_two_qubit_sequence(double eta);

/// Two-qubit gate from the closed loop; returns exp(i N phi_t Z (x) Z) with
/// ancilla fidelity 1.
GateReport spin_two_qubit_gate(double eta, EnsembleSize n);

/// Controls 0..n-1 displaced by x_k / sqrt(2N), targets n..n+m-1 by i p_j / sqrt(2N).
SpinSequence spin_fan_sequence(std::span<const double> xs, std::span<const double> ps, EnsembleSize n);

struct FanReport {
  GateReport gate;
  // Worst 1 - |<0|zeta_f>|^2 over register basis inputs.
  double worst_infidelity = 0.0;
  // Largest |phase - sum_jk theta_jk z_k z_j| (wrapped to (-pi, pi]) over
  // basis inputs, with theta_jk = x_k p_j.
  double max_phase_error = 0.0;
  // All-zeros input: accumulated ancilla phase and final label.
  double extremal_phase = 0.0;
  cplx extremal_label{0.0, 0.0};
  // Side length zeta_n of the equivalent single-rectangle loop for the
  // all-zeros input: sqrt(2N) tan(sum_k atan(x_k / sqrt(2N))). Equals
  // sum_k x_k for a single control.
  double extremal_zeta_n = 0.0;
};

FanReport fan_sequence_simulate(std::span<const double> xs, std::span<const double> ps, EnsembleSize n);

/// Intrinsic error of the rectangle loop with side zeta_n / sqrt(2N).
struct ErrorPoint {
  double zeta_n = 0.0;
  std::int64_t n = 0;
  double phi_f = 0.0;
  double phi_e = 0.0;
  double infidelity = 0.0;
  double phi_series = 0.0;
  double infid_series = 0.0;
  // phi_f - phi_series and infidelity - infid_series, evaluated in extended
  // precision before rounding; the plain double difference of the fields
  // above cannot resolve residuals below ~1e-16.
  double phi_residual = 0.0;
  double infid_residual = 0.0;
};

ErrorPoint fan_error(double zeta_n, EnsembleSize n);

struct ContractionRow {
  std::int64_t n = 0;
  double phi_f = 0.0;
  double abs_err_phi = 0.0;      // |phi_f - |zeta|^2|
  double overlap = 0.0;          // |<0|zeta/sqrt(2N)>_N|^2
  double abs_err_overlap = 0.0;  // |overlap - e^{-|zeta|^2/2}|
  double prefactor = 0.0;        // atan(u)/u, u = |zeta|/sqrt(2N)
};

/// Finite-N quantities that converge to their field-mode values as N grows.
/// The loop phase uses the side length |zeta|.
std::vector<ContractionRow> contraction_probe(cplx zeta, std::span<const std::int64_t> ns);

/// Least-squares slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Worst phase distance for the spin interaction generator:
///   exp(i (theta/2) Z (x) (sin(phi) J_x - cos(phi) J_y)) vs C(D_N(theta,phi), D_N(-theta,phi)),
///   U^dagger exp(i theta J_x) U vs exp(i theta J_y) with U = (R(pi/2) H)^{(x) N}.
/// Dense, so N <= 8 (resource-limit otherwise).
double spin_generator_check(double theta, double phi, EnsembleSize n);

}  // namespace amqc::spin
