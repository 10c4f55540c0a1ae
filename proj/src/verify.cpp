// Identity suites behind `amqc verify`. Each check compares a simulated
// sequence against an operator built independently (basis enumeration or a
// product of embedded controlled gates) and records the worst deviation.

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "amqc/cli_support.hpp"
#include "amqc/qubus.hpp"
#include "amqc/qudit_ancilla.hpp"
#include "amqc/qudit_phase_space.hpp"
#include "amqc/spin_ensemble.hpp"

namespace amqc::cli {

namespace {

using qudit::PhaseConvention;
using qudit::QuditDim;

struct Tally {
  CheckResult r;

  Tally(std::string name, double tol) {
    r.identity = std::move(name);
    r.tolerance = tol;
  }
  void add(double deviation) {
    ++r.cases;
    if (deviation <= r.tolerance) ++r.passed;
    r.worst_deviation = std::max(r.worst_deviation, std::isnan(deviation) ? INFINITY : deviation);
  }
  void expect(bool ok) { add(ok ? 0.0 : INFINITY); }
};

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  Tally& check(std::string name, double tol) {
    tallies_.emplace_back(std::move(name), tol);
    return tallies_.back();
  }

  SuiteResult finish(std::chrono::steady_clock::time_point start) {
    for (auto& t : tallies_) {
      result_.checks.push_back(t.r);
      ++result_.run;
      if (t.r.ok()) ++result_.passed;
      if (std::isfinite(t.r.worst_deviation)) result_.worst_deviation = std::max(result_.worst_deviation, t.r.worst_deviation);
    }
    result_.wall = std::chrono::steady_clock::now() - start;
    return result_;
  }

 private:
  SuiteResult result_;
  std::deque<Tally> tallies_;
};

std::vector<PhaseConvention> conventions_for(QuditDim d) {
  if (d.value() % 2 == 1) return {PhaseConvention::ModularInverse, PhaseConvention::HalfRoot};
  return {PhaseConvention::HalfRoot};
}

Matrix mat_pow(const Matrix& m, std::int64_t k) {
  Matrix out = identity(static_cast<std::size_t>(m.rows()));
  for (std::int64_t i = 0; i < k; ++i) out = out * m;
  return out;
}

// Product of C^c_t R(theta) gates on an n-qubit register.
struct CR {
  std::size_t control, target;
  double theta;
};
Matrix cr_product(std::size_t n, const std::vector<CR>& gates) {
  Matrix u = identity(std::size_t{1} << n);
  for (const auto& g : gates) u = embed_register_controlled(g.control, g.target, n, identity(2), phase_gate(g.theta)) * u;
  return u;
}

// prod exp(i theta Z_a Z_b) by enumeration.
struct ZZ {
  std::size_t a, b;
  double theta;
};
Matrix zz_product(std::size_t n, const std::vector<ZZ>& terms) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t bits = 0; bits < dim; ++bits) {
    double phase = 0.0;
    for (const auto& t : terms) {
      const double za = ((bits >> (n - 1 - t.a)) & 1U) ? -1.0 : 1.0;
      const double zb = ((bits >> (n - 1 - t.b)) & 1U) ? -1.0 : 1.0;
      phase += t.theta * za * zb;
    }
    u(static_cast<Eigen::Index>(bits), static_cast<Eigen::Index>(bits)) = std::polar(1.0, phase);
  }
  return u;
}

double gate_distance(const GateReport& g, const Matrix& oracle) {
  return g.register_unitary ? phase_distance(*g.register_unitary, oracle) : INFINITY;
}

std::vector<StateVector> ancilla_inits(QuditDim d) {
  StateVector uniform = StateVector::Constant(d.value(), 1.0 / std::sqrt(double(d.value())));
  return {qudit::position_state(d, 0), qudit::position_state(d, 1), uniform};
}

SuiteResult qudit_suite() {
  const auto start = std::chrono::steady_clock::now();
  Suite s("qudit");
  std::mt19937_64 rng(20141017);

  {
    auto& weyl = s.check("Weyl relation Z^p X^x = w(xp) X^x Z^p, d<=8", 1e-12);
    auto& period = s.check("periodicity X^d = Z^d = I, d<=8", 1e-12);
    auto& conj = s.check("Fourier conjugation F^dag Z F = X, d<=8", 1e-12);
    auto& quad = s.check("D(x,0) = F^dag D(0,x) F, d<=8", 1e-12);
    for (int dv = 2; dv <= 8; ++dv) {
      const QuditDim d(dv);
      const auto [x, z] = qudit::generalized_pauli(d);
      const Matrix f = qudit::fourier(d);
      period.add(std::max(max_abs_diff(mat_pow(x, dv), identity(d.size())), max_abs_diff(mat_pow(z, dv), identity(d.size()))));
      conj.add(max_abs_diff(f.adjoint() * z * f, x));
      for (int a = 0; a < dv; ++a) {
        quad.add(max_abs_diff(qudit::displacement(d, a, 0, PhaseConvention::HalfRoot),
                              f.adjoint() * qudit::displacement(d, 0, a, PhaseConvention::HalfRoot) * f));
        for (int b = 0; b < dv; ++b)
          weyl.add(max_abs_diff(mat_pow(z, b) * mat_pow(x, a), qudit::root_of_unity(d, a * b) * mat_pow(x, a) * mat_pow(z, b)));
      }
    }
  }
  {
    auto& comp = s.check("compose_labels vs matrix product, 200 random per convention", 1e-12);
    for (PhaseConvention conv : {PhaseConvention::ModularInverse, PhaseConvention::HalfRoot}) {
      for (int i = 0; i < 200; ++i) {
        int dv = std::uniform_int_distribution<int>(2, 8)(rng);
        if (conv == PhaseConvention::ModularInverse && dv % 2 == 0) ++dv;
        const QuditDim d(dv);
        std::uniform_int_distribution<std::int64_t> lab(-2 * dv, 2 * dv);
        const qudit::LatticeLabel l1{lab(rng), lab(rng)}, l2{lab(rng), lab(rng)};
        const auto [sum, phase] = qudit::compose_labels(d, l1, l2, conv);
        comp.add(max_abs_diff(qudit::displacement(d, l2, conv) * qudit::displacement(d, l1, conv),
                              phase * qudit::displacement(d, sum, conv)));
      }
    }
  }
  {
    auto& loop = s.check("rectangle loop phase = w(xp), both conventions", 1e-12);
    auto& shifted = s.check("D(-x,0) R(theta) D(x,0)|m> = e^{i theta (x+m)_d}|m>, d<=6", 1e-12);
    for (int dv = 2; dv <= 8; ++dv) {
      const QuditDim d(dv);
      for (PhaseConvention conv : conventions_for(d)) {
        for (int x = 0; x < dv; ++x)
          for (int p = 0; p < dv; ++p) {
            const qudit::LatticeLabel rect[] = {{x, 0}, {0, p}, {-x, 0}, {0, -p}};
            loop.add(std::abs(qudit::loop_phase(d, rect, conv) - qudit::root_of_unity(d, x * p)));
          }
      }
      if (dv > 6) continue;
      const double theta = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
      for (int x = -dv; x <= dv; ++x) {
        const Matrix m = qudit::displacement(d, -x, 0, PhaseConvention::HalfRoot) * qudit::rotation(d, theta) *
                         qudit::displacement(d, x, 0, PhaseConvention::HalfRoot);
        Matrix expect = Matrix::Zero(dv, dv);
        for (int k = 0; k < dv; ++k) expect(k, k) = std::polar(1.0, theta * static_cast<double>(qudit::mod(x + k, dv)));
        shifted.add(max_abs_diff(m, expect));
      }
    }
  }
  {
    auto& gate = s.check("two-qubit sequence = C^j_k R(2 pi x p / d), d in {2,3,4,5,8}, 3 ancilla inits", kIdentityTol);
    auto& fid = s.check("two-qubit sequence ancilla return fidelity = 1", 1e-12);
    auto& ent = s.check("entangling iff xp mod d != 0", 0.0);
    for (int dv : {2, 3, 4, 5, 8}) {
      const QuditDim d(dv);
      for (PhaseConvention conv : conventions_for(d))
        for (int x = 0; x < dv; ++x)
          for (int p = 0; p < dv; ++p) {
            const auto seq = qudit::two_qubit_sequence(d, conv, 2, 0, 1, x, p);
            const Matrix oracle = cr_product(2, {{0, 1, 2.0 * kPi * x * p / dv}});
            for (const auto& anc : ancilla_inits(d)) {
              const GateReport r = qudit::extract_register_gate(seq, anc);
              gate.add(gate_distance(r, oracle));
              fid.add(1.0 - r.ancilla_return_fidelity);
              if (r.register_unitary) {
                const Matrix& u = *r.register_unitary;
                const bool entangling = std::abs(u(0, 0) * u(3, 3) - u(1, 1) * u(2, 2)) > 1e-9;
                ent.expect(entangling == ((x * p) % dv != 0));
              }
            }
          }
    }
  }
  {
    auto& fan1 = s.check("fan one-target n=3 d=4 = prod C^k_t R(2 pi x_k p/d)", kIdentityTol);
    auto& fan2 = s.check("fan bipartite n=m=2 d=3 = prod C^k_j R(2 pi x_k p_j/d)", kIdentityTol);
    auto& count = s.check("fan interaction counts 2(n+1), 2(n+m) vs naive 4n, 4nm", 0.0);
    const QuditDim d4(4), d3(3);
    const std::int64_t xs[] = {1, 2, 3};
    const auto one = qudit::fan_one_target(d4, PhaseConvention::HalfRoot, xs, 1);
    std::vector<CR> gates1;
    for (std::size_t k = 0; k < 3; ++k) gates1.push_back({k, 3, 2.0 * kPi * xs[k] * 1 / 4.0});
    fan1.add(gate_distance(qudit::extract_register_gate(one, ancilla_inits(d4)[2]), cr_product(4, gates1)));
    count.expect(one.interaction_count() == 8 && qudit::naive_fan_one_target_count(3) == 12);
    const std::int64_t bx[] = {1, 2}, bp[] = {1, 1};
    for (PhaseConvention conv : conventions_for(d3)) {
      const auto bi = qudit::fan_bipartite(d3, conv, bx, bp);
      std::vector<CR> gates2;
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) gates2.push_back({k, 2 + j, 2.0 * kPi * bx[k] * bp[j] / 3.0});
      for (const auto& anc : ancilla_inits(d3)) fan2.add(gate_distance(qudit::extract_register_gate(bi, anc), cr_product(4, gates2)));
      count.expect(bi.interaction_count() == 8 && qudit::naive_fan_bipartite_count(2, 2) == 16);
    }
  }
  {
    auto& tof = s.check("generalized Toffoli n in {1,2,3}, d=n+2, U in {X, R(pi/3)}", kIdentityTol);
    auto& perm = s.check("generalized Toffoli invariant under control permutations", kIdentityTol);
    for (std::size_t n = 1; n <= 3; ++n) {
      const QuditDim d(static_cast<int>(n + 2));
      for (const Matrix& u : {pauli_x(), phase_gate(kPi / 3.0)}) {
        const GateReport r = qudit::extract_register_gate(qudit::generalized_toffoli(n, u, d), qudit::position_state(d, 0));
        const std::size_t dim = std::size_t{1} << (n + 1);
        Matrix oracle = identity(dim);
        const std::size_t all_on = ((std::size_t{1} << n) - 1) << 1;
        oracle.block(static_cast<Eigen::Index>(all_on), static_cast<Eigen::Index>(all_on), 2, 2) = u;
        tof.add(gate_distance(r, oracle));
        if (r.register_unitary && n >= 2) {
          // Swap controls 0 and 1 by conjugating with the corresponding permutation.
          Matrix swap = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
          for (std::size_t b = 0; b < dim; ++b) {
            const std::size_t b0 = (b >> n) & 1U, b1 = (b >> (n - 1)) & 1U;
            std::size_t sw = b & ~((std::size_t{1} << n) | (std::size_t{1} << (n - 1)));
            sw |= (b1 << n) | (b0 << (n - 1));
            swap(static_cast<Eigen::Index>(sw), static_cast<Eigen::Index>(b)) = 1.0;
          }
          perm.add(phase_distance(swap * *r.register_unitary * swap.transpose(), *r.register_unitary));
        }
      }
    }
  }
  {
    auto& modd = s.check("mod-d gate n=4 d=3: phase theta ((sum q) mod d) q_t on all 32 inputs", 1e-12);
    auto& small = s.check("mod-d gate with n<d equals prod C^k_t R(theta)", kIdentityTol);
    const double theta = kPi / 5.0;
    const QuditDim d3(3);
    const GateReport r = qudit::extract_register_gate(qudit::mod_d_phase_gate(theta, 4, d3), qudit::position_state(d3, 0));
    for (std::size_t b = 0; b < 32; ++b) {
      const std::size_t controls = b >> 1, qt = b & 1U;
      const int sum = __builtin_popcountll(controls);
      const cplx expect = std::polar(1.0, theta * (sum % 3) * static_cast<double>(qt));
      modd.add(r.register_unitary ? std::abs((*r.register_unitary)(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) - expect)
                                  : INFINITY);
    }
    for (std::size_t n = 1; n <= 3; ++n) {
      const QuditDim d(static_cast<int>(n + 1));
      std::vector<CR> gates;
      for (std::size_t k = 0; k < n; ++k) gates.push_back({k, n, 0.7});
      small.add(gate_distance(qudit::extract_register_gate(qudit::mod_d_phase_gate(0.7, n, d), qudit::position_state(d, 0)),
                              cr_product(n + 1, gates)));
    }
  }
  {
    auto& arb = s.check("single-pair arbitrary rotation = C^j_k R(theta)", kIdentityTol);
    for (int dv : {2, 3, 5}) {
      const QuditDim d(dv);
      for (double theta : {0.0, kPi, 2.0 * kPi / 7.0, std::uniform_real_distribution<double>(-4.0, 4.0)(rng)}) {
        arb.add(gate_distance(qudit::extract_register_gate(qudit::single_pair_arbitrary_rotation(theta, d), qudit::position_state(d, 0)),
                              cr_product(2, {{0, 1, theta}})));
      }
    }
  }
  {
    auto& gen = s.check("Z (x) S_z generates C(R_d(theta), R_d(-theta)) up to local phase, 20 random", 1e-12);
    for (int i = 0; i < 20; ++i) {
      const QuditDim d(std::uniform_int_distribution<int>(2, 6)(rng));
      gen.add(qudit::hamiltonian_generator_check(std::uniform_real_distribution<double>(-kPi, kPi)(rng), d));
    }
    auto& route = s.check("theta = -pi/d gives the apply-on-one interaction D(0,1)", 1e-12);
    for (int dv = 2; dv <= 6; ++dv) {
      const QuditDim d(dv);
      const double theta = -kPi / dv;
      const Matrix corrected = embed_controlled(0, 1, d.size(), qudit::rotation(d, theta), qudit::rotation(d, -theta)) *
                               kron(identity(2), qudit::rotation(d, -theta));
      route.add(phase_distance(corrected, embed_controlled(0, 1, d.size(), identity(d.size()),
                                                           qudit::displacement(d, 0, 1, PhaseConvention::HalfRoot))));
    }
  }
  {
    auto& pol = s.check("symmetric polarity (x,p) ~ apply-on-one (2x,2p) up to local rotations", kIdentityTol);
    for (int dv : {2, 3, 4, 5}) {
      const QuditDim d(dv);
      for (PhaseConvention conv : conventions_for(d))
        for (int x = 0; x < dv; ++x)
          for (int p = 0; p < dv; ++p) {
            const GateReport sym = qudit::extract_register_gate(
                qudit::two_qubit_sequence(d, conv, 2, 0, 1, x, p, qudit::Polarity::Symmetric), ancilla_inits(d)[2]);
            const GateReport one = qudit::extract_register_gate(qudit::two_qubit_sequence(d, conv, 2, 0, 1, 2 * x, 2 * p),
                                                                ancilla_inits(d)[2]);
            const double alpha = 2.0 * kPi * x * p / dv;
            pol.add(sym.register_unitary && one.register_unitary
                        ? phase_distance(qubus::cz_local_correction(alpha) * *sym.register_unitary, *one.register_unitary)
                        : INFINITY);
          }
    }
  }
  return s.finish(start);
}

SuiteResult spin_suite() {
  const auto start = std::chrono::steady_clock::now();
  Suite s("spin");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  {
    auto& angles = s.check("stereographic matrix form = exp(i(theta/2)(sin phi X - cos phi Y))", 1e-12);
    auto& axes = s.check("real zeta rotates about y, imaginary zeta about x", 1e-12);
    for (int i = 0; i < 50; ++i) {
      const double theta = 2.9 * unit(rng), phi = kPi * unit(rng);
      angles.add(max_abs_diff(spin::su2_displacement(spin::stereo_from_angles(theta, phi)), spin::su2_displacement_angles(theta, phi)));
      const double t = 2.0 * unit(rng);
      axes.add(std::max(max_abs_diff(spin::su2_displacement(t), expi_hermitian(pauli_y(), std::atan(t))),
                        max_abs_diff(spin::su2_displacement(cplx{0.0, t}), expi_hermitian(pauli_x(), std::atan(t)))));
    }
  }
  {
    auto& comp = s.check("compose_on_origin vs per-qubit matrix product, 500 random, N<=10", 1e-12);
    for (int i = 0; i < 500; ++i) {
      const cplx z1{unit(rng), unit(rng)}, z2{unit(rng), unit(rng)};
      const spin::EnsembleSize n(std::uniform_int_distribution<int>(1, 10)(rng));
      const auto c = spin::compose_on_origin(z1, z2, n);
      StateVector north(2);
      north << 0.0, 1.0;
      const StateVector qubit = spin::su2_displacement(z2) * spin::su2_displacement(z1) * north;
      const StateVector target = spin::qubit_coherent_state(c.zeta_out);
      StateVector lhs = StateVector::Ones(1), rhs = StateVector::Ones(1);
      for (std::int64_t k = 0; k < n.value(); ++k) {
        lhs = kron(lhs, qubit);
        rhs = kron(rhs, target);
      }
      comp.add((lhs - c.phase * rhs).cwiseAbs().maxCoeff());
    }
  }
  {
    auto& close = s.check("loop closure |zeta_t| over 100 eta in (0, sqrt2-1]", 1e-12);
    auto& phase = s.check("loop phase from composition = phi_t", 1e-12);
    for (int i = 1; i <= 100; ++i) {
      const double eta = spin::max_loop_eta() * i / 100.0;
      const auto loop = spin::loop_close(eta);
      cplx z{};
      double acc = 0.0;
      for (cplx w : {cplx{eta, 0}, cplx{0, loop.tau}, cplx{-loop.tau, 0}, cplx{0, -eta}}) {
        const auto st = spin::displace(z, w);
        z = st.zeta;
        acc += st.qubit_phase;
      }
      close.add(std::abs(z));
      phase.add(std::abs(acc - loop.phi_t));
    }
  }
  {
    auto& gate = s.check("closed-loop gate at N=6 = exp(i N phi_t Z(x)Z)", kIdentityTol);
    auto& fid = s.check("closed-loop gate ancilla return fidelity = 1", 1e-12);
    const spin::EnsembleSize n(6);
    for (double eta : {0.02, 0.1, 0.25, spin::max_loop_eta()}) {
      const GateReport r = spin::spin_two_qubit_gate(eta, n);
      gate.add(gate_distance(r, zz_product(2, {{0, 1, 6.0 * spin::loop_close(eta).phi_t}})));
      fid.add(1.0 - r.ancilla_return_fidelity);
    }
  }
  {
    auto& gen = s.check("Z (x) X(phi) generates C(D_N(theta,phi), D_N(-theta,phi)), N<=4", 1e-10);
    for (int i = 0; i < 10; ++i) {
      gen.add(spin::spin_generator_check(kPi * unit(rng), kPi * unit(rng), spin::EnsembleSize(1 + i % 4)));
    }
  }
  {
    auto& series = s.check("|phi_f - (zeta^2 - zeta^4/N)| <= 10 zeta^6/N^2 on zeta in 1..50, N in 1e5..1e9", 0.0);
    for (int z = 1; z <= 50; ++z)
      for (std::int64_t n : {100000LL, 1000000LL, 10000000LL, 100000000LL, 1000000000LL}) {
        const auto e = spin::fan_error(z, spin::EnsembleSize(n));
        const double bound = 10.0 * std::pow(z, 6) / (double(n) * double(n));
        series.add(std::max(0.0, std::abs(e.phi_residual) - bound));
      }
  }
  {
    auto& fan = s.check("fan infidelity > 0 and <= 2 zeta^6/N^2 for n=m=2", 0.0);
    for (double z : {1.0, 2.0, 5.0})
      for (std::int64_t n : {10000LL, 100000LL, 1000000LL}) {
        const double xs[] = {z / 2, z / 2};
        const auto r = spin::fan_sequence_simulate(xs, xs, spin::EnsembleSize(n));
        const double bound = 2.0 * std::pow(z, 6) / (double(n) * double(n));
        fan.expect(r.worst_infidelity > 0.0 && r.worst_infidelity <= bound);
      }
  }
  {
    auto& norm = s.check("branch norm conserved over 8 random interactions, N=6, n=3", 1e-10);
    for (int trial = 0; trial < 10; ++trial) {
      StateVector reg(8);
      for (auto& a : reg) a = cplx{unit(rng), unit(rng)};
      reg.normalize();
      spin::SpinBranchState st(3, spin::EnsembleSize(6), reg);
      for (int k = 0; k < 8; ++k) {
        st.apply_controlled(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 2)(rng)), 0.5 * cplx{unit(rng), unit(rng)});
        norm.add(std::abs(st.norm() - 1.0));
      }
    }
  }
  return s.finish(start);
}

SuiteResult qubus_suite() {
  const auto start = std::chrono::steady_clock::now();
  Suite s("qubus");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.5, 1.5);

  {
    auto& rect = s.check("rectangle of displacements gives e^{ixp}", 1e-12);
    auto& anti = s.check("compose phase flips under swap, invariant under joint negation", 1e-15);
    for (int i = 0; i < 50; ++i) {
      const double x = unit(rng), p = unit(rng);
      qubus::FieldLabel l{};
      cplx acc{1.0, 0.0};
      for (qubus::FieldLabel w : {qubus::FieldLabel{x, 0}, {0, p}, {-x, 0}, {0, -p}}) {
        const auto [next, ph] = qubus::compose_field(l, w);
        l = next;
        acc *= ph;
      }
      rect.add(std::abs(acc - std::polar(1.0, x * p)) + std::hypot(l.x, l.p));
      const qubus::FieldLabel a{unit(rng), unit(rng)}, b{unit(rng), unit(rng)};
      const cplx ab = qubus::compose_field(a, b).second, ba = qubus::compose_field(b, a).second;
      anti.add(std::max(std::abs(ba - std::conj(ab)), std::abs(qubus::compose_field(-a, -b).second - ab)));
    }
  }
  {
    auto& gate = s.check("two-qubit sequence = exp(ixp Z(x)Z) from any bus start", 1e-12);
    auto& local = s.check("(R(2xp) (x) R(2xp)) exp(ixp Z(x)Z) = e^{ixp} CR(4xp)", 1e-12);
    for (int i = 0; i < 30; ++i) {
      const double x = unit(rng), p = unit(rng);
      const qubus::FieldLabel start{unit(rng), unit(rng)};
      const GateReport r = qubus::field_two_qubit(x, p, start);
      gate.add(gate_distance(r, zz_product(2, {{0, 1, x * p}})));
      if (r.register_unitary) {
        local.add(max_abs_diff(qubus::cz_local_correction(x * p) * *r.register_unitary,
                               std::polar(1.0, x * p) * cr_product(2, {{0, 1, 4 * x * p}})));
      }
    }
  }
  {
    auto& fan = s.check("bipartite fan n=m=2 equals four sequential pair gates", 1e-12);
    auto& count = s.check("fan uses 2(n+m) interactions vs 4nm sequential", 0.0);
    auto& closure = s.check("every branch returns exactly to the start label", 0.0);
    for (int i = 0; i < 10; ++i) {
      const double xs[] = {unit(rng), unit(rng)}, ps[] = {unit(rng), unit(rng)};
      const qubus::FieldLabel start{unit(rng), unit(rng)};
      const GateReport bi = qubus::field_fan(xs, ps, start);
      Matrix seq = identity(16);
      std::size_t seq_count = 0;
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          qubus::FieldSequence pair{4, {{k, {xs[k], 0}}, {2 + j, {0, ps[j]}}, {k, {-xs[k], 0}}, {2 + j, {0, -ps[j]}}}};
          const GateReport pr = qubus::run_field_sequence(pair, start);
          seq_count += pr.interaction_count;
          if (pr.register_unitary) seq = *pr.register_unitary * seq;
        }
      fan.add(gate_distance(bi, seq));
      count.expect(bi.interaction_count == 8 && seq_count == 16);
      closure.expect(qubus::field_sequence_closes(qubus::field_fan_sequence(xs, ps), start));
    }
  }
  return s.finish(start);
}

SuiteResult cross_suite() {
  const auto start = std::chrono::steady_clock::now();
  Suite s("cross");
  {
    auto& slope = s.check("spin rectangle phase -> zeta^2 with log-log slope in [-1.05,-0.95]", 0.05);
    const auto ns = doubling_range(1000, 1000000);
    for (double z : {1.0, 2.0, 5.0}) {
      const auto rows = spin::contraction_probe(z, ns);
      std::vector<double> x, y;
      for (const auto& r : rows) {
        x.push_back(double(r.n));
        y.push_back(r.abs_err_phi);
      }
      slope.add(std::abs(spin::loglog_slope(x, y) + 1.0));
    }
    auto& overlap = s.check("vacuum overlap at N=1e6, zeta=1, matches e^{-|zeta|^2/2} (relative)", 1e-6);
    const std::int64_t big[] = {1000000};
    overlap.add(spin::contraction_probe(cplx{1, 0}, big).front().abs_err_overlap / std::exp(-0.5));
    // Relative gap is |zeta|^4 / (8N) to leading order.
    auto& gap = s.check("vacuum overlap relative gap = |zeta|^4/(8N) within 1%, N=1e6", 0.01);
    for (cplx z : {cplx{1, 0}, cplx{1, 1}, cplx{2, 0}, cplx{5, 0}}) {
      const auto row = spin::contraction_probe(z, big).front();
      const double predicted = std::norm(z) * std::norm(z) / 8e6;
      gap.add(std::abs(row.abs_err_overlap / std::exp(-std::norm(z) / 2.0) / predicted - 1.0));
    }
  }
  {
    auto& ext = s.check("spin fan extremal phase = closed-form phi_f", 1e-12);
    for (std::int64_t n : {10000LL, 1000000LL, 10000000LL}) {
      for (double z : {1.0, 3.0, 5.0}) {
        const double one[] = {z};
        const double two[] = {z / 2, z / 2};
        for (std::span<const double> xs : {std::span<const double>(one), std::span<const double>(two)}) {
          const auto r = spin::fan_sequence_simulate(xs, xs, spin::EnsembleSize(n));
          ext.add(std::abs(r.extremal_phase - spin::fan_error(r.extremal_zeta_n, spin::EnsembleSize(n)).phi_f));
        }
      }
    }
  }
  {
    auto& match = s.check("qubus fan = qudit fan up to local rotations for theta = 2 pi k/d", kIdentityTol);
    for (int dv : {3, 4, 5}) {
      const QuditDim d(dv);
      const std::int64_t xs[] = {1, 2}, ps[] = {1, dv - 1};
      const GateReport q = qudit::extract_register_gate(qudit::fan_bipartite(d, PhaseConvention::HalfRoot, xs, ps),
                                                        qudit::position_state(d, 0));
      // Field steps scaled so 4 x_k p_j = 2 pi x'_k p'_j / d.
      const double scale = std::sqrt(kPi / (2.0 * dv));
      const double fx[] = {scale * xs[0], scale * xs[1]}, fp[] = {scale * ps[0], scale * ps[1]};
      const GateReport f = qubus::field_fan(fx, fp);
      if (!q.register_unitary || !f.register_unitary) {
        match.add(INFINITY);
        continue;
      }
      Matrix local = identity(16);
      for (std::size_t k = 0; k < 2; ++k) {
        const double sum = fx[k] * (fp[0] + fp[1]);
        local = embed_single(k, 4, phase_gate(2.0 * sum)) * local;
      }
      for (std::size_t j = 0; j < 2; ++j) {
        const double sum = fp[j] * (fx[0] + fx[1]);
        local = embed_single(2 + j, 4, phase_gate(2.0 * sum)) * local;
      }
      match.add(phase_distance(local * *f.register_unitary, *q.register_unitary));
    }
  }
  {
    auto& rate = s.check("field loop phase minus spin loop phase decays as 1/N", 0.05);
    for (double x : {0.5, 1.0, 2.0}) {
      std::vector<double> ns, diffs;
      for (std::int64_t n : doubling_range(1000, 1000000)) {
        const double eta = x / std::sqrt(2.0 * double(n));
        ns.push_back(double(n));
        diffs.push_back(double(n) * spin::loop_close(eta).phi_t - x * x);
      }
      rate.add(std::abs(spin::loglog_slope(ns, diffs) + 1.0));
    }
  }
  return s.finish(start);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"qudit", "spin", "qubus", "cross"};
  return names;
}

SuiteResult run_suite(std::string_view name) {
  if (name == "qudit") return qudit_suite();
  if (name == "spin") return spin_suite();
  if (name == "qubus") return qubus_suite();
  if (name == "cross") return cross_suite();
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

void print_suite(const SuiteResult& r, std::ostream& out, bool color) {
  const auto tag = [&](bool ok) -> std::string {
    if (!color) return ok ? "PASS" : "FAIL";
    return ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
  };
  out << fmt::format("== {} ({}/{} identities, {:.3f} s)\n", r.name, r.passed, r.run, r.wall.count());
  for (const auto& c : r.checks) {
    out << fmt::format("  {} {:<4}/{:<4} worst={:.3e} tol={:.1e}  {}\n", tag(c.ok()), c.passed, c.cases, c.worst_deviation,
                       c.tolerance, c.identity);
  }
}

}  // namespace amqc::cli
