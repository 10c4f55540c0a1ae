#pragma once

// Dense complex linear algebra shared by every backend and oracle.
//
// Matrices are small (at most a few thousand rows), so everything is a dense
// Eigen matrix of std::complex<double>. Basis ordering follows kron: the
// leftmost factor is the most significant index, so for a register of n
// qubits followed by a d-level ancilla the basis index is
//   bits * d + level,  bits = q_0 q_1 ... q_{n-1} read as a binary number.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>

#include <Eigen/Dense>

namespace amqc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Comparison tolerance for the identity suites.
inline constexpr double kIdentityTol = 1e-10;
// Tolerance for the unitary check U^dagger U = I.
inline constexpr double kUnitaryTol = 1e-12;

Matrix identity(std::size_t dim);

Matrix kron(const Matrix& a, const Matrix& b);

/// Tensor product of a list of factors, left to right.
Matrix kron_all(std::initializer_list<Matrix> factors);

/// |0><0|_c (x) u0 + |1><1|_c (x) u1 acting on (control qubit, ancilla) of an
/// n-qubit register followed by an anc_dim-level system; identity elsewhere.
Matrix embed_controlled(std::size_t control_qubit, std::size_t n_qubits, std::size_t anc_dim,
                        const Matrix& u0, const Matrix& u1);

/// Controlled gate with both control and target inside an n-qubit register
/// (C^c_t(u0, u1) with 2x2 blocks). No ancilla.
Matrix embed_register_controlled(std::size_t control, std::size_t target, std::size_t n_qubits,
                                 const Matrix& u0, const Matrix& u1);

/// Single-qubit operator on qubit `q` of an n-qubit register.
Matrix embed_single(std::size_t q, std::size_t n_qubits, const Matrix& u);

/// min over phi of ||u - e^{i phi} v||_F.
double phase_distance(const Matrix& u, const Matrix& v);

/// |<a|b>|^2.
double state_fidelity(const StateVector& a, const StateVector& b);

/// Largest elementwise deviation of U^dagger U from the identity.
double unitarity_defect(const Matrix& u);

inline bool is_unitary(const Matrix& u, double tol = kUnitaryTol) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

/// exp(i t H) for Hermitian H, via the eigendecomposition of H.
Matrix expi_hermitian(const Matrix& h, double t);

/// Single-qubit phase gate R(theta) = |0><0| + e^{i theta}|1><1|.
Matrix phase_gate(double theta);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();

/// Largest |a_ij - b_ij|; both operands must share a shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace amqc
