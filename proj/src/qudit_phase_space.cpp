#include "amqc/qudit_phase_space.hpp"

#include <cmath>
#include <string>

#include "amqc/error.hpp"

namespace amqc::qudit {

QuditDim::QuditDim(int d) : d_(d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "qudit dimension must be >= 2, got " + std::to_string(d));
}

std::int64_t mod(std::int64_t a, std::int64_t d) {
  const std::int64_t r = a % d;
  return r < 0 ? r + d : r;
}

cplx root_of_unity(QuditDim d, std::int64_t a) {
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(mod(a, d.value())) / d.value());
}

const char* to_string(PhaseConvention conv) noexcept {
  switch (conv) {
    case PhaseConvention::ModularInverse: return "modular-inverse";
    case PhaseConvention::HalfRoot: return "half-root";
  }
  return "unknown";
}

void check_convention(QuditDim d, PhaseConvention conv) {
  if (conv == PhaseConvention::ModularInverse && d.value() % 2 == 0) {
    throw Error(ErrorKind::InvalidConvention,
                "modular-inverse phase convention needs odd d, got d=" + std::to_string(d.value()));
  }
}

namespace {

std::int64_t inverse_of_two(QuditDim d) { return (d.value() + 1) / 2; }

// Scalar s with D(l2) D(l1) = s D(l1 + l2); the exponent is 2^{-1}(x1 p2 - p1 x2).
cplx compose_scalar(QuditDim d, LatticeLabel l1, LatticeLabel l2, PhaseConvention conv) {
  const std::int64_t cross = l1.x * l2.p - l1.p * l2.x;
  if (conv == PhaseConvention::ModularInverse) {
    return root_of_unity(d, mod(inverse_of_two(d) * mod(cross, d.value()), d.value()));
  }
  // e^{i pi cross / d}; reduce mod 2d so large raw labels do not lose precision.
  const std::int64_t r = mod(cross, 2 * static_cast<std::int64_t>(d.value()));
  return std::polar(1.0, kPi * static_cast<double>(r) / d.value());
}

}  // namespace

std::pair<Matrix, Matrix> generalized_pauli(QuditDim d) {
  const auto n = static_cast<Eigen::Index>(d.value());
  Matrix x = Matrix::Zero(n, n);
  Matrix z = Matrix::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    x((m + 1) % n, m) = 1.0;
    z(m, m) = root_of_unity(d, m);
  }
  return {x, z};
}

Matrix fourier(QuditDim d) {
  const auto n = static_cast<Eigen::Index>(d.value());
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix f(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) f(m, k) = norm * root_of_unity(d, m * k);
  return f;
}

Matrix rotation(QuditDim d, double theta) {
  const auto n = static_cast<Eigen::Index>(d.value());
  Matrix r = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) r(k, k) = std::polar(1.0, static_cast<double>(k) * theta);
  return r;
}

Matrix spin_z(QuditDim d) {
  const auto n = static_cast<Eigen::Index>(d.value());
  const double s = (d.value() - 1) / 2.0;
  Matrix sz = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) sz(k, k) = s - static_cast<double>(k);
  return sz;
}

cplx displacement_prefactor(QuditDim d, std::int64_t x, std::int64_t p, PhaseConvention conv) {
  check_convention(d, conv);
  if (conv == PhaseConvention::ModularInverse) {
    const std::int64_t xp = mod(mod(x, d.value()) * mod(p, d.value()), d.value());
    return root_of_unity(d, -inverse_of_two(d) * xp);
  }
  const std::int64_t xp = mod(mod(x, 2 * d.value()) * mod(p, 2 * d.value()), 2 * d.value());
  return std::polar(1.0, -kPi * static_cast<double>(xp) / d.value());
}

Matrix displacement(QuditDim d, std::int64_t x, std::int64_t p, PhaseConvention conv) {
  const cplx pref = displacement_prefactor(d, x, p, conv);
  const auto n = static_cast<Eigen::Index>(d.value());
  // Z^p X^x |m> = w((m + x) p) |m + x>.
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const std::int64_t target = mod(m + x, d.value());
    out(static_cast<Eigen::Index>(target), m) = pref * root_of_unity(d, target * mod(p, d.value()));
  }
  return out;
}

std::pair<LatticeLabel, cplx> compose_labels(QuditDim d, LatticeLabel l1, LatticeLabel l2,
                                             PhaseConvention conv) {
  check_convention(d, conv);
  return {l1 + l2, compose_scalar(d, l1, l2, conv)};
}

std::pair<LatticeLabel, cplx> compose_labels(QuditDim d, LatticeLabel l1, PhaseConvention conv1,
                                             LatticeLabel l2, PhaseConvention conv2) {
  if (conv1 != conv2) throw Error(ErrorKind::InvalidArgument, "compose_labels: phase convention mismatch");
  return compose_labels(d, l1, l2, conv1);
}

cplx loop_phase(QuditDim d, std::span<const LatticeLabel> labels, PhaseConvention conv) {
  check_convention(d, conv);
  LatticeLabel net{};
  cplx scalar{1.0, 0.0};
  for (const auto& l : labels) {
    auto [next, s] = compose_labels(d, net, l, conv);
    net = next;
    scalar *= s;
  }
  const LatticeLabel r = net.reduce(d);
  if (r.x != 0 || r.p != 0) {
    throw Error(ErrorKind::OpenLoop, "loop does not close on the torus, net label (" + std::to_string(r.x) +
                                         ", " + std::to_string(r.p) + ") mod " + std::to_string(d.value()));
  }
  // D(net) = prefactor(net) * Z^{net.p} X^{net.x} = prefactor(net) * I.
  return scalar * displacement_prefactor(d, net.x, net.p, conv);
}

}  // namespace amqc::qudit
