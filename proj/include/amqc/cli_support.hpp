#pragma once

// Library side of the amqc command-line tool: identity suites, CSV emitters
// and interaction-count demos. The executable in tools/ only parses flags.

#include <chrono>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amqc::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CheckResult {
  std::string identity;
  std::size_t cases = 0;
  std::size_t passed = 0;
  double worst_deviation = 0.0;
  double tolerance = 0.0;

  bool ok() const { return passed == cases; }
};

struct SuiteResult {
  std::string name;
  std::size_t run = 0;
  std::size_t passed = 0;
  double worst_deviation = 0.0;
  std::chrono::duration<double> wall{};
  std::vector<CheckResult> checks;

  bool ok() const { return passed == run; }
};

/// "qudit", "spin", "qubus", "cross".
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(std::string_view name);

/// Human-readable report, one line per identity.
void print_suite(const SuiteResult& r, std::ostream& out, bool color);

struct SweepSpec {
  std::vector<double> zeta_values;
  std::vector<std::int64_t> n_values;
  std::string output_path;
};

/// `steps` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t steps);

/// N_min, 2 N_min, 4 N_min, ... up to and including N_max when it lands on the ladder.
std::vector<std::int64_t> doubling_range(std::int64_t n_min, std::int64_t n_max);

/// Parses "1e4,1e5,1000000" into integers; throws std::invalid_argument on junk.
std::vector<std::int64_t> parse_n_list(std::string_view text);

/// Header `zeta_n,N,phi_f,phi_E,infidelity,phi_series,infid_series`, rows
/// ordered by (zeta_n, N), values with 12 significant digits. Grid points are
/// evaluated on `threads` workers; output order does not depend on it.
void write_sweep_csv(const SweepSpec& spec, std::ostream& out, unsigned threads = 0);

/// Header `N,phi_f,abs_err_phi,overlap,abs_err_overlap,prefactor`.
void write_contraction_csv(std::complex<double> zeta, std::span<const std::int64_t> ns, std::ostream& out);

struct DemoParams {
  int d = 2;
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::int64_t x = 1;
  std::int64_t p = 1;
  double theta = 0.0;
};

const std::vector<std::string>& demo_names();

/// Prints the sequence, the naive and achieved interaction counts and the
/// verified register gate. Throws std::invalid_argument for bad parameters.
void run_demo(std::string_view name, const DemoParams& params, std::ostream& out);

}  // namespace amqc::cli
