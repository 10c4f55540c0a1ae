#pragma once

// Operators on the discrete toroidal phase space Z(d) x Z(d) of a qudit.
//
// Position basis |m>_x, m = 0..d-1. X_d shifts |m>_x -> |m+1 mod d>_x and
// Z_d = diag(w^0, ..., w^{d-1}) with w = e^{2 pi i / d}, so that
//   Z_d^p X_d^x = w^{xp} X_d^x Z_d^p.
// The displacement D(x,p) = c(x,p) Z_d^p X_d^x carries a prefactor c that
// depends on the PhaseConvention. Closed loops are convention independent.

#include <cstdint>
#include <span>
#include <utility>

#include "amqc/tensor_core.hpp"

namespace amqc::qudit {

class QuditDim {
 public:
  explicit QuditDim(int d);
  int value() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(d_); }
  bool operator==(const QuditDim&) const = default;

 private:
  int d_;
};

/// w_d(a) = e^{2 pi i a / d}, with `a` reduced mod d first.
cplx root_of_unity(QuditDim d, std::int64_t a);

/// Non-negative remainder.
std::int64_t mod(std::int64_t a, std::int64_t d);

enum class PhaseConvention {
  // Prefactor w_d(-2^{-1} x p) with 2^{-1} = (d+1)/2; odd d only.
  ModularInverse,
  // Prefactor e^{-i pi x p / d}; any d.
  HalfRoot,
};

const char* to_string(PhaseConvention conv) noexcept;

/// Throws invalid-convention when `conv` is ModularInverse and d is even.
void check_convention(QuditDim d, PhaseConvention conv);

/// Lattice displacement. Components are kept as written (possibly negative);
/// reduce() gives the representative in Z(d)^2.
struct LatticeLabel {
  std::int64_t x = 0;
  std::int64_t p = 0;

  LatticeLabel operator-() const { return {-x, -p}; }
  LatticeLabel operator+(const LatticeLabel& o) const { return {x + o.x, p + o.p}; }
  LatticeLabel reduce(QuditDim d) const { return {mod(x, d.value()), mod(p, d.value())}; }
  bool same_point(const LatticeLabel& o, QuditDim d) const {
    const auto a = reduce(d), b = o.reduce(d);
    return a.x == b.x && a.p == b.p;
  }
};

/// (X_d, Z_d).
std::pair<Matrix, Matrix> generalized_pauli(QuditDim d);

/// F = d^{-1/2} sum_{m,n} w(mn) |m><n|. Satisfies F^dagger Z_d F = X_d.
Matrix fourier(QuditDim d);

/// R_d(theta) = diag(e^{i n theta}), n = 0..d-1.
Matrix rotation(QuditDim d, double theta);

/// S_z = diag(s, s-1, ..., -s), s = (d-1)/2.
Matrix spin_z(QuditDim d);

/// Scalar prefactor of D(x,p) under `conv`.
cplx displacement_prefactor(QuditDim d, std::int64_t x, std::int64_t p, PhaseConvention conv);

/// D_d(x,p) = prefactor * Z_d^p X_d^x.
Matrix displacement(QuditDim d, std::int64_t x, std::int64_t p, PhaseConvention conv);

inline Matrix displacement(QuditDim d, LatticeLabel l, PhaseConvention conv) {
  return displacement(d, l.x, l.p, conv);
}

/// Label and scalar s with D(l2) D(l1) = s D(l1 + l2), i.e. l1 applied first.
std::pair<LatticeLabel, cplx> compose_labels(QuditDim d, LatticeLabel l1, LatticeLabel l2,
                                             PhaseConvention conv);

/// Convention-checked overload for callers that carry a convention per label.
std::pair<LatticeLabel, cplx> compose_labels(QuditDim d, LatticeLabel l1, PhaseConvention conv1,
                                             LatticeLabel l2, PhaseConvention conv2);

/// Scalar s with D(l_k) ... D(l_1) = s I for a loop whose labels sum to 0 mod d.
/// Throws open-loop (naming the net label) otherwise.
cplx loop_phase(QuditDim d, std::span<const LatticeLabel> labels, PhaseConvention conv);

}  // namespace amqc::qudit
