// Closed-form intrinsic-error curves for the spin ensemble, evaluated in
// quad precision so that residuals against the large-N series survive the
// final rounding to double.

#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "amqc/error.hpp"
#include "amqc/spin_ensemble.hpp"

namespace amqc::spin {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

}  // namespace

ErrorPoint fan_error(double zeta_n, EnsembleSize n) {
  if (!(zeta_n > 0.0)) throw Error(ErrorKind::InvalidArgument, "fan_error: zeta_n must be positive");
  const Quad z = zeta_n;
  const Quad big_n = static_cast<double>(n.value());
  const Quad z2 = z * z;
  const Quad u = z2 / (2 * big_n);  // zeta_N^2

  const Quad phi_f = big_n * atan(2 * u / (1 + 2 * u - u * u));
  const Quad phi_series = z2 - z2 * z2 / big_n;
  const Quad x = 8 * u * u * u / pow(1 + u, 4);
  const Quad infidelity = -boost::math::expm1(-big_n * boost::math::log1p(x));
  const Quad infid_series = z2 * z2 * z2 / (big_n * big_n);

  ErrorPoint out;
  out.zeta_n = zeta_n;
  out.n = n.value();
  out.phi_f = static_cast<double>(phi_f);
  out.phi_e = static_cast<double>((z2 - phi_f) / z2);
  out.infidelity = static_cast<double>(infidelity);
  out.phi_series = static_cast<double>(phi_series);
  out.infid_series = static_cast<double>(infid_series);
  out.phi_residual = static_cast<double>(phi_f - phi_series);
  out.infid_residual = static_cast<double>(infidelity - infid_series);
  return out;
}

std::vector<ContractionRow> contraction_probe(cplx zeta, std::span<const std::int64_t> ns) {
  const double side = std::abs(zeta);
  if (!(side > 0.0)) throw Error(ErrorKind::InvalidArgument, "contraction_probe: zeta must be non-zero");
  std::vector<ContractionRow> rows;
  rows.reserve(ns.size());
  std::int64_t prev = 0;
  for (std::int64_t raw : ns) {
    if (raw <= prev) throw Error(ErrorKind::InvalidArgument, "contraction_probe: N values must increase");
    prev = raw;
    const EnsembleSize n(raw);
    const ErrorPoint e = fan_error(side, n);
    const double scaled = side / std::sqrt(2.0 * n.as_double());
    ContractionRow r;
    r.n = raw;
    r.phi_f = e.phi_f;
    r.abs_err_phi = std::abs(e.phi_e) * side * side;
    r.overlap = coherent_fidelity(cplx{}, zeta / std::sqrt(2.0 * n.as_double()), n);
    r.abs_err_overlap = std::abs(r.overlap - std::exp(-side * side / 2.0));
    r.prefactor = std::atan(scaled) / scaled;
    rows.push_back(r);
  }
  return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::InvalidArgument, "loglog_slope: need >= 2 paired points");
  const auto k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace amqc::spin
