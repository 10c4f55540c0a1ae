#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "amqc/cli_support.hpp"
#include "amqc/qudit_ancilla.hpp"
#include "amqc/spin_ensemble.hpp"

namespace amqc::cli {

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("linspace: steps must be positive");
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  out.back() = hi;
  return out;
}

std::vector<std::int64_t> doubling_range(std::int64_t n_min, std::int64_t n_max) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("doubling_range: need 1 <= n_min <= n_max");
  std::vector<std::int64_t> out;
  for (std::int64_t n = n_min; n <= n_max; n *= 2) out.push_back(n);
  return out;
}

std::vector<std::int64_t> parse_n_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item(text.substr(pos, comma - pos));
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size() || !(v >= 1.0) || v > 9.0e18 ||
        v != std::floor(v)) {
      throw std::invalid_argument("bad N value '" + item + "'");
    }
    out.push_back(static_cast<std::int64_t>(v));
    pos = comma + 1;
  }
  return out;
}

void write_sweep_csv(const SweepSpec& spec, std::ostream& out, unsigned threads) {
  const std::size_t nz = spec.zeta_values.size(), nn = spec.n_values.size();
  std::vector<spin::EnsembleSize> sizes;
  for (auto n : spec.n_values) sizes.emplace_back(n);
  std::vector<spin::ErrorPoint> points(nz * nn);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) points[i] = spin::fan_error(spec.zeta_values[i / nn], sizes[i % nn]);
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out << "zeta_n,N,phi_f,phi_E,infidelity,phi_series,infid_series\n";
  for (const auto& e : points) {
    out << fmt::format("{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n", e.zeta_n, double(e.n), e.phi_f, e.phi_e,
                       e.infidelity, e.phi_series, e.infid_series);
  }
}

void write_contraction_csv(std::complex<double> zeta, std::span<const std::int64_t> ns, std::ostream& out) {
  const auto rows = spin::contraction_probe(zeta, ns);
  out << "N,phi_f,abs_err_phi,overlap,abs_err_overlap,prefactor\n";
  for (const auto& r : rows) {
    out << fmt::format("{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n", double(r.n), r.phi_f, r.abs_err_phi, r.overlap,
                       r.abs_err_overlap, r.prefactor);
  }
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"two-qubit", "fan-one", "fan-bipartite", "toffoli", "modd"};
  return names;
}

namespace {

using qudit::PhaseConvention;

std::string describe(const qudit::SequenceElement& e) {
  return std::visit(
      [](const auto& el) -> std::string {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, qudit::Interaction>) {
          return fmt::format("C_{}(D({},{})){}", el.qubit, el.label.x, el.label.p,
                             el.polarity == qudit::Polarity::Symmetric ? " symmetric" : "");
        } else if constexpr (std::is_same_v<T, qudit::ProjectedGate>) {
          return fmt::format("P_{}[level {}] U", el.target, el.level);
        } else if constexpr (std::is_same_v<T, qudit::ControlledRotation>) {
          return fmt::format("C_{}(R({:.6g}))", el.control, el.theta);
        } else {
          return fmt::format("R({:.6g}) on ancilla", el.theta);
        }
      },
      e);
}

Matrix cr_product(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& gates) {
  Matrix u = identity(std::size_t{1} << n);
  for (const auto& [c, t, theta] : gates) u = embed_register_controlled(c, t, n, identity(2), phase_gate(theta)) * u;
  return u;
}

void print_gate(const qudit::InteractionSequence& seq, const GateReport& r, const Matrix& oracle, std::ostream& out) {
  out << "sequence (first applied first):\n";
  for (std::size_t i = 0; i < seq.elements.size(); ++i) out << fmt::format("  {:>3}  {}\n", i + 1, describe(seq.elements[i]));
  out << fmt::format("ancilla return fidelity: {:.15f}\n", r.ancilla_return_fidelity);
  out << fmt::format("residual entanglement:   {:.3e}\n", r.residual_entanglement);
  if (!r.register_unitary) {
    out << "register gate: ancilla does not disentangle\n";
    return;
  }
  const Matrix& u = *r.register_unitary;
  const bool diagonal = (u - Matrix(u.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12;
  if (diagonal) {
    out << "register gate phases / pi (diagonal):\n";
    for (Eigen::Index b = 0; b < u.rows(); ++b) {
      std::string bits;
      for (std::size_t q = 0; q < seq.n_qubits; ++q) bits += ((b >> (seq.n_qubits - 1 - q)) & 1) ? '1' : '0';
      out << fmt::format("  |{}>  {:+.6f}\n", bits, std::arg(u(b, b)) / kPi);
    }
  } else {
    out << "register gate: non-diagonal, " << u.rows() << "x" << u.cols() << "\n";
  }
  const double dist = phase_distance(u, oracle);
  out << fmt::format("oracle phase distance: {:.3e} ({})\n", dist, dist < kIdentityTol ? "verified" : "MISMATCH");
}

std::size_t as_count(std::int64_t v, const char* what) {
  if (v < 1 || v > 6) throw std::invalid_argument(fmt::format("{} must be in [1, 6]", what));
  return static_cast<std::size_t>(v);
}

}  // namespace

void run_demo(std::string_view name, const DemoParams& params, std::ostream& out) {
  if (params.d < 2) throw std::invalid_argument("d must be >= 2");
  const qudit::QuditDim d(params.d);
  const PhaseConvention conv = PhaseConvention::HalfRoot;
  const StateVector anc0 = qudit::position_state(d, 0);

  if (name == "two-qubit") {
    const auto seq = qudit::two_qubit_sequence(d, conv, 2, 0, 1, params.x, params.p);
    const double theta = 2.0 * kPi * static_cast<double>(params.x * params.p) / params.d;
    out << fmt::format("C^0_1 R(2 pi x p / d), d={} x={} p={}: {} interactions (naive: 4)\n", params.d, params.x, params.p,
                       seq.interaction_count());
    const GateReport r = qudit::extract_register_gate(seq, anc0);
    print_gate(seq, r, cr_product(2, {{0, 1, theta}}), out);
    if (qudit::mod(2 * params.x * params.p, params.d) == 0 && qudit::mod(params.x * params.p, params.d) != 0) {
      out << "this is CZ\n";
    }
    return;
  }
  if (name == "fan-one") {
    const std::size_t n = as_count(params.n, "n");
    const std::vector<std::int64_t> xs(n, params.x);
    const auto seq = qudit::fan_one_target(d, conv, xs, params.p);
    out << fmt::format("{} gates via {} interactions (naive: {})\n", n, seq.interaction_count(),
                       qudit::naive_fan_one_target_count(n));
    std::vector<std::tuple<std::size_t, std::size_t, double>> gates;
    for (std::size_t k = 0; k < n; ++k) gates.emplace_back(k, n, 2.0 * kPi * double(params.x * params.p) / params.d);
    print_gate(seq, qudit::extract_register_gate(seq, anc0), cr_product(n + 1, gates), out);
    return;
  }
  if (name == "fan-bipartite") {
    const std::size_t n = as_count(params.n, "n"), m = as_count(params.m, "m");
    if (n + m > 10) throw std::invalid_argument("n + m must be <= 10");
    const std::vector<std::int64_t> xs(n, params.x), ps(m, params.p);
    const auto seq = qudit::fan_bipartite(d, conv, xs, ps);
    out << fmt::format("{} gates via {} interactions (naive: {})\n", n * m, seq.interaction_count(),
                       qudit::naive_fan_bipartite_count(n, m));
    std::vector<std::tuple<std::size_t, std::size_t, double>> gates;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) gates.emplace_back(k, n + j, 2.0 * kPi * double(params.x * params.p) / params.d);
    print_gate(seq, qudit::extract_register_gate(seq, anc0), cr_product(n + m, gates), out);
    return;
  }
  if (name == "toffoli") {
    const std::size_t n = as_count(params.n, "n");
    const auto seq = qudit::generalized_toffoli(n, pauli_x(), d);
    out << fmt::format("{}-control Toffoli, d={}: {} sequence elements ({} displacements + 1 projected gate)\n", n, params.d,
                       seq.elements.size(), seq.elements.size() - 1);
    const std::size_t dim = std::size_t{1} << (n + 1);
    Matrix oracle = identity(dim);
    const auto last = static_cast<Eigen::Index>(dim - 2);
    oracle.block(last, last, 2, 2) = pauli_x();
    print_gate(seq, qudit::extract_register_gate(seq, anc0), oracle, out);
    return;
  }
  if (name == "modd") {
    const std::size_t n = as_count(params.n, "n");
    const auto seq = qudit::mod_d_phase_gate(params.theta, n, d);
    out << fmt::format("mod-{} phase gate, n={}, theta={:.6g}: {} sequence elements\n", params.d, n, params.theta,
                       seq.elements.size());
    const std::size_t dim = std::size_t{1} << (n + 1);
    Matrix oracle = identity(dim);
    for (std::size_t b = 0; b < dim; ++b) {
      const auto sum = static_cast<std::int64_t>(__builtin_popcountll(b >> 1));
      oracle(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) =
          std::polar(1.0, params.theta * static_cast<double>(qudit::mod(sum, params.d)) * static_cast<double>(b & 1U));
    }
    print_gate(seq, qudit::extract_register_gate(seq, anc0), oracle, out);
    return;
  }
  throw std::invalid_argument("unknown demo '" + std::string(name) + "'");
}

}  // namespace amqc::cli
