#include "amqc/tensor_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "amqc/error.hpp"

namespace amqc {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

Matrix identity(std::size_t dim) {
  return Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(std::initializer_list<Matrix> factors) {
  Matrix out = Matrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Matrix embed_controlled(std::size_t control_qubit, std::size_t n_qubits, std::size_t anc_dim,
                        const Matrix& u0, const Matrix& u1) {
  const auto d = static_cast<Eigen::Index>(anc_dim);
  if (control_qubit >= n_qubits) {
    throw Error(ErrorKind::InvalidArgument, "embed_controlled: control qubit out of range");
  }
  if (u0.rows() != d || u0.cols() != d || u1.rows() != d || u1.cols() != d) {
    throw Error(ErrorKind::InvalidArgument,
                "embed_controlled: blocks must be " + std::to_string(anc_dim) + "x" +
                    std::to_string(anc_dim));
  }
  const std::size_t n_reg = std::size_t{1} << n_qubits;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_reg) * d, static_cast<Eigen::Index>(n_reg) * d);
  const std::size_t shift = n_qubits - 1 - control_qubit;
  for (std::size_t bits = 0; bits < n_reg; ++bits) {
    const auto off = static_cast<Eigen::Index>(bits) * d;
    out.block(off, off, d, d) = ((bits >> shift) & 1U) ? u1 : u0;
  }
  return out;
}

Matrix embed_register_controlled(std::size_t control, std::size_t target, std::size_t n_qubits,
                                 const Matrix& u0, const Matrix& u1) {
  if (control >= n_qubits || target >= n_qubits || control == target) {
    throw Error(ErrorKind::InvalidArgument, "embed_register_controlled: bad qubit indices");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t cshift = n_qubits - 1 - control;
  const std::size_t tshift = n_qubits - 1 - target;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const Matrix& u = ((col >> cshift) & 1U) ? u1 : u0;
    const std::size_t tin = (col >> tshift) & 1U;
    for (std::size_t tout = 0; tout < 2; ++tout) {
      const std::size_t row = (col & ~(std::size_t{1} << tshift)) | (tout << tshift);
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          u(static_cast<Eigen::Index>(tout), static_cast<Eigen::Index>(tin));
    }
  }
  return out;
}

Matrix embed_single(std::size_t q, std::size_t n_qubits, const Matrix& u) {
  if (q >= n_qubits) throw Error(ErrorKind::InvalidArgument, "embed_single: qubit out of range");
  return kron_all({identity(std::size_t{1} << q), u, identity(std::size_t{1} << (n_qubits - 1 - q))});
}

double phase_distance(const Matrix& u, const Matrix& v) {
  require_same_shape(u, v, "phase_distance");
  if (u.rows() != u.cols()) throw Error(ErrorKind::InvalidArgument, "phase_distance: not square");
  // ||u - e^{i phi} v||^2 = ||u||^2 + ||v||^2 - 2 Re(e^{i phi} tr(u^dagger v)), minimized by
  // aligning e^{i phi} with tr(v^dagger u). A vanishing trace makes the norm phi-independent.
  const cplx overlap = (v.adjoint() * u).trace();
  const cplx align = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return (u - align * v).norm();
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "state_fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

Matrix expi_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, t * w(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix phase_gate(double theta) {
  Matrix r = Matrix::Identity(2, 2);
  r(1, 1) = std::polar(1.0, theta);
  return r;
}

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1.0;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace amqc
