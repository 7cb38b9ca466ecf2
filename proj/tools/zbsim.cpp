// zbsim: batch driver for the Zitterbewegung simulator.
//
//   zbsim run <config.ini> [--out DIR] [--threads N] [--check-oracle] [--dump-decomposition]
//   zbsim run --scenario fig2a ...
//   zbsim show <scenario>       print a built-in scenario file
//   zbsim list                  list built-in scenarios
//
// Exit codes: 0 ok, 2 config error, 3 convergence failure, 4 oracle mismatch.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "zbsim/config.hpp"
#include "zbsim/errors.hpp"
#include "zbsim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Zitterbewegung of a Dirac electron in a magnetic field"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario;
  std::string out_dir;
  int threads = 0;
  bool check_oracle = false;
  bool dump = false;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "run a config file or a built-in scenario");
  auto* path_opt = run_cmd->add_option("config", config_path, "config file");
  auto* scen_opt = run_cmd->add_option("--scenario", scenario, "built-in scenario (fig1, fig2a, fig2b, fig2c)");
  path_opt->excludes(scen_opt);
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--check-oracle", check_oracle, "compare against the matrix oracle");
  run_cmd->add_flag("--dump-decomposition", dump, "write f_table.csv and u_band.csv");
  run_cmd->add_flag("-q,--quiet", quiet, "do not print the report");

  std::string show_name;
  auto* show_cmd = app.add_subcommand("show", "print a built-in scenario");
  show_cmd->add_option("scenario", show_name)->required();
  auto* list_cmd = app.add_subcommand("list", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& n : zb::preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (show_cmd->parsed()) {
      std::cout << zb::preset_text(show_name);
      return 0;
    }
    if (config_path.empty() && scenario.empty()) throw zb::ConfigError("give a config file or --scenario");
    const zb::RunConfig config =
        scenario.empty() ? zb::load_config(config_path) : zb::parse_config(zb::preset_text(scenario));
    zb::RunOptions opts;
    if (!out_dir.empty()) opts.out_dir = out_dir;
    else if (!scenario.empty()) opts.out_dir = "out/" + scenario;
    if (threads > 0) opts.threads = threads;
    opts.check_oracle = check_oracle;
    opts.dump_decomposition = dump;
    const auto summary = zb::run(config, opts);
    if (!quiet) std::cout << summary.report;
    for (const auto& f : summary.files) std::cerr << "wrote " << f << "\n";
    if (summary.oracle && !summary.oracle->passed) {
      std::cerr << fmt::format("error: oracle deviation {:.3e} L exceeds {:.1e} L\n", summary.oracle->max_deviation,
                               summary.oracle->tolerance);
      return 4;
    }
    return 0;
  } catch (const zb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const zb::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const zb::TruncationError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const zb::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
