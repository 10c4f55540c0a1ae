// amqc: verification suites, error-curve sweeps, interaction-count demos and
// contraction tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "amqc/cli_support.hpp"
#include "amqc/error.hpp"

namespace {

using namespace amqc::cli;

bool use_color() {
  const char* no_color = std::getenv("NO_COLOR");
  return (no_color == nullptr || *no_color == '\0') && isatty(STDOUT_FILENO);
}

int cmd_verify(const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    bool known = false;
    for (const auto& n : suite_names()) known = known || n == suite;
    if (!known) {
      std::cerr << "amqc verify: unknown suite '" << suite << "' (expected qudit, spin, qubus, cross or all)\n";
      return kExitUsage;
    }
    names = {suite};
  }
  bool ok = true;
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n);
    print_suite(r, std::cout, use_color());
    ok = ok && r.ok();
  }
  return ok ? kExitOk : kExitFailure;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ancilla-mediated gate simulator"};
  app.require_subcommand(1);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run identity suites (qudit, spin, qubus, cross, all)");
  verify->add_option("suite", suite, "Suite name");

  double zeta_min = 1, zeta_max = 50;
  std::size_t zeta_steps = 50;
  std::string n_list = "1e4,1e5,1e6,1e7,1e8,1e9";
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Write the intrinsic-error grid as CSV");
  sweep->add_option("--zeta-min", zeta_min, "Smallest zeta_n");
  sweep->add_option("--zeta-max", zeta_max, "Largest zeta_n");
  sweep->add_option("--zeta-steps", zeta_steps, "Number of zeta_n values")->check(CLI::PositiveNumber);
  sweep->add_option("--n-list", n_list, "Comma-separated ensemble sizes");
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  std::string demo_name;
  DemoParams params;
  auto* demo = app.add_subcommand("demo", "Show a sequence, its interaction counts and its verified gate");
  demo->add_option("sequence", demo_name, "two-qubit, fan-one, fan-bipartite, toffoli or modd")->required();
  demo->add_option("--d", params.d, "Ancilla dimension");
  demo->add_option("--n", params.n, "Number of controls");
  demo->add_option("--m", params.m, "Number of targets");
  demo->add_option("--x", params.x, "Position step");
  demo->add_option("--p", params.p, "Momentum step");
  demo->add_option("--theta", params.theta, "Rotation angle");

  double zeta_re = 1, zeta_im = 0;
  std::int64_t n_min = 1000, n_max = 1000000;
  std::string contraction_out;
  auto* contraction = app.add_subcommand("contraction", "Write the large-N convergence table as CSV");
  contraction->add_option("--zeta-re", zeta_re, "Real part of zeta");
  contraction->add_option("--zeta-im", zeta_im, "Imaginary part of zeta");
  contraction->add_option("--n-min", n_min, "First N (doubled up to --n-max)");
  contraction->add_option("--n-max", n_max, "Last N");
  contraction->add_option("--out", contraction_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  SweepSpec spec;
  std::vector<std::int64_t> ns;
  try {
    if (*sweep) {
      if (zeta_max < zeta_min || !(zeta_min > 0)) throw std::invalid_argument("need 0 < zeta-min <= zeta-max");
      spec.zeta_values = linspace(zeta_min, zeta_max, zeta_steps);
      spec.n_values = parse_n_list(n_list);
      spec.output_path = out_path;
    }
    if (*contraction) ns = doubling_range(n_min, n_max);
  } catch (const std::invalid_argument& e) {
    std::cerr << "amqc: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(suite);
    if (*sweep) {
      auto out = open_output(spec.output_path);
      write_sweep_csv(spec, out);
      if (!out.flush()) throw std::runtime_error("write to '" + spec.output_path + "' failed");
      return kExitOk;
    }
    if (*contraction) {
      auto out = open_output(contraction_out);
      write_contraction_csv({zeta_re, zeta_im}, ns, out);
      if (!out.flush()) throw std::runtime_error("write to '" + contraction_out + "' failed");
      return kExitOk;
    }
    if (*demo) {
      try {
        run_demo(demo_name, params, std::cout);
      } catch (const std::invalid_argument& e) {
        std::cerr << "amqc demo: " << e.what() << "\n";
        return kExitUsage;
      } catch (const amqc::Error& e) {
        std::cerr << "amqc demo: " << e.what() << "\n";
        return kExitUsage;
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "amqc: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
