// Command-line front end: validate game files, run the potential/equilibrium
// pipeline, run the brute-force oracles, and emit bundled or random fixtures.
//
// Exit codes: 0 success; 1 spec fails validation; 2 I/O or parse error;
// 3 game is not potential in the requested mode; 4 a size cap refused work.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mbg/equilibrium.hpp"
#include "mbg/generator.hpp"
#include "mbg/spec_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalidSpec = 1;
constexpr int kIoError = 2;
constexpr int kNotPotential = 3;
constexpr int kSizeCap = 4;

mbg::PotentialMode parse_mode(const std::string& mode) {
  if (mode == "group") return mbg::PotentialMode::kGroup;
  if (mode == "strong") return mbg::PotentialMode::kStrong;
  throw CLI::ValidationError("--mode must be 'group' or 'strong'");
}

int load_and_validate(const std::string& path, mbg::MbgSpec& spec, bool quiet) {
  try {
    spec = mbg::load_spec(path);
  } catch (const mbg::SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  const auto report = mbg::validate(spec);
  if (!report.ok()) {
    std::cerr << report.to_string();
    return kInvalidSpec;
  }
  if (!quiet) std::cerr << "spec ok: " << path << "\n";
  return kOk;
}

int write_json_out(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kIoError;
  }
  out << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-group Bayesian game potential and equilibrium toolkit"};
  app.require_subcommand(1);

  std::string spec_path, out_path, mode_str = "group", oracle_str = "auto";
  std::string fixture_name;
  double tol = 1e-8, tie_tol = 1e-9;
  std::uint64_t seed = 1;
  bool json_stdout = false, force_vector = false, serial = false, quiet = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a game file");
  validate_cmd->add_option("spec", spec_path, "game file (JSON)")->required();

  auto* solve_cmd = app.add_subcommand(
      "solve", "transform, solve the potential equations, extract equilibria");
  solve_cmd->add_option("spec", spec_path, "game file (JSON)")->required();
  solve_cmd->add_option("--mode", mode_str, "group|strong (default group)");
  solve_cmd->add_option("--tol", tol, "potential solve tolerance (default 1e-8)");
  solve_cmd->add_option("--tie-tol", tie_tol, "argmax tie tolerance (default 1e-9)");
  solve_cmd->add_option("--oracle", oracle_str,
                        "auto|on|off: brute-force cross-check (default auto)");
  solve_cmd->add_option("--out", out_path, "write the JSON report here");
  solve_cmd->add_flag("--json", json_stdout, "print JSON to stdout instead of text");
  solve_cmd->add_flag("--force-vector", force_vector,
                      "include the full potential row in JSON regardless of size");
  solve_cmd->add_flag("--serial", serial, "disable the parallel kernels");
  solve_cmd->add_flag("--quiet", quiet, "suppress progress notes on stderr");

  auto* oracle_cmd =
      app.add_subcommand("oracle", "run only the exhaustive equilibrium search");
  oracle_cmd->add_option("spec", spec_path, "game file (JSON)")->required();
  oracle_cmd->add_option("--mode", mode_str, "group|strong (default group)");
  oracle_cmd->add_option("--out", out_path, "write the JSON report here");
  oracle_cmd->add_flag("--json", json_stdout, "print JSON to stdout instead of text");
  oracle_cmd->add_flag("--serial", serial, "disable the parallel kernels");

  auto* fixture_cmd = app.add_subcommand("fixture", "emit a game file");
  fixture_cmd
      ->add_option("name", fixture_name,
                   "auction (bundled demo) | random | potential")
      ->required();
  fixture_cmd->add_option("--seed", seed, "seed for the random fixtures (default 1)");
  fixture_cmd->add_option("--mode", mode_str,
                          "group|strong: which property 'potential' builds in");
  fixture_cmd->add_option("--out", out_path, "write the game file here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) {
      mbg::MbgSpec spec;
      const int rc = load_and_validate(spec_path, spec, /*quiet=*/true);
      if (rc == kOk) std::cout << "valid\n";
      return rc;
    }

    if (app.got_subcommand(fixture_cmd)) {
      mbg::MbgSpec spec;
      if (fixture_name == "auction") {
        spec = mbg::example_auction();
      } else if (fixture_name == "random") {
        spec = mbg::random_spec(seed);
      } else if (fixture_name == "potential") {
        spec = mbg::random_potential_spec(seed, parse_mode(mode_str));
      } else {
        std::cerr << "error: unknown fixture '" << fixture_name << "'\n";
        return kIoError;
      }
      return write_json_out(mbg::spec_to_json(spec), out_path);
    }

    mbg::MbgSpec spec;
    if (const int rc = load_and_validate(spec_path, spec, quiet); rc != kOk) return rc;

    mbg::SolveOptions opts;
    opts.mode = parse_mode(mode_str);
    opts.tol = tol;
    opts.tie_tol = tie_tol;
    opts.parallel = !serial;
    if (!serial) opts.path = mbg::BuildPath::kDirectParallel;
    else opts.path = mbg::BuildPath::kDirectSerial;

    if (app.got_subcommand(oracle_cmd)) {
      opts.oracle = mbg::SolveOptions::Oracle::kOn;
    } else if (oracle_str == "on") {
      opts.oracle = mbg::SolveOptions::Oracle::kOn;
    } else if (oracle_str == "off") {
      opts.oracle = mbg::SolveOptions::Oracle::kOff;
    } else if (oracle_str == "auto") {
      opts.oracle = mbg::SolveOptions::Oracle::kAuto;
    } else {
      std::cerr << "error: --oracle must be auto, on, or off\n";
      return kIoError;
    }

    const auto start = std::chrono::steady_clock::now();
    mbg::EquilibriumReport rep;
    try {
      rep = mbg::solve_mbne(spec, opts);
    } catch (const std::length_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kSizeCap;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    if (!quiet) std::cerr << "elapsed: " << elapsed << " ms\n";

    mbg::ReportRenderOptions ropts;
    ropts.force_vectors = force_vector;
    const nlohmann::json jrep = mbg::report_to_json(rep, spec, ropts);
    if (!out_path.empty()) {
      if (const int rc = write_json_out(jrep, out_path); rc != kOk) return rc;
    }
    if (json_stdout) {
      std::cout << jrep.dump(2) << "\n";
    } else {
      std::cout << mbg::report_to_text(rep, spec);
    }

    if (app.got_subcommand(oracle_cmd)) return kOk;
    return rep.potential_solvable ? kOk : kNotPotential;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}
