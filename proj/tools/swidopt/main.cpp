#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "swidopt/numerics.hpp"
#include "swidopt/scenario_file.hpp"

namespace {

using swidopt::cli::CommonOptions;
using swidopt::cli::ReportOptions;

void add_common_flags(CLI::App* cmd, CommonOptions& options, std::string& unit_name,
                      long long& seed, bool& seed_given, int& threads) {
  cmd->add_option("--config", options.config_path, "Scenario JSON file");
  cmd->add_option("--out", options.out_path, "Output path (default: stdout)");
  cmd->add_option("--unit", unit_name, "Rate unit: nats or bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  cmd->add_option("--seed", seed, "Override the scenario seed")
      ->each([&seed_given](const std::string&) { seed_given = true; });
  cmd->add_option("--threads", threads, "Worker thread cap (default: SWIDOPT_THREADS or all cores)");
  cmd->add_option("--reproduce", options.reproduce, "Emit a preset figure grid (fig1..fig10)");
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  const char* env = std::getenv("SWIDOPT_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long parsed = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || parsed < 1) {
    throw swidopt::ValidationError("SWIDOPT_THREADS must be a positive integer");
  }
  return static_cast<int>(parsed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold optimization, rate regions, and simulation for "
               "switched-diversity multiuser scheduling"};
  app.require_subcommand(1);

  CommonOptions options;
  std::string unit_name = "nats";
  long long seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::string thresholds_path;
  ReportOptions report_options;

  CLI::App* optimize = app.add_subcommand("optimize", "Solve per-user feedback thresholds");
  add_common_flags(optimize, options, unit_name, seed, seed_given, threads);

  CLI::App* region = app.add_subcommand("region", "Sweep achievable-rate-region boundaries");
  add_common_flags(region, options, unit_name, seed, seed_given, threads);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of the flag protocol");
  add_common_flags(simulate, options, unit_name, seed, seed_given, threads);
  simulate->add_option("--thresholds", thresholds_path,
                       "JSON file with thresholds_rate (skips optimization)");

  CLI::App* benchmark = app.add_subcommand("benchmark", "Full-feedback selection baseline");
  add_common_flags(benchmark, options, unit_name, seed, seed_given, threads);

  CLI::App* report = app.add_subcommand("report", "Fairness, gap, and distribution tables");
  add_common_flags(report, options, unit_name, seed, seed_given, threads);
  report->add_flag("--gap", report_options.gap, "Gap vs full feedback over an SNR/user grid");
  report->add_option("--snr", report_options.snr_list, "Comma-separated mean SNRs in dB");
  report->add_option("--m", report_options.m_range, "User-count range A..B or single N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    options.unit = unit_name == "bits" ? swidopt::Unit::Bits : swidopt::Unit::Nats;
    if (seed_given) {
      if (seed < 0) throw swidopt::ValidationError("--seed must be nonnegative");
      options.seed = static_cast<std::uint64_t>(seed);
    }
    options.threads = resolve_threads(threads);

    if (optimize->parsed()) return swidopt::cli::run_optimize(options);
    if (region->parsed()) return swidopt::cli::run_region(options);
    if (simulate->parsed()) return swidopt::cli::run_simulate(options, thresholds_path);
    if (benchmark->parsed()) return swidopt::cli::run_benchmark(options);
    if (report->parsed()) return swidopt::cli::run_report(options, report_options);
    return 2;
  } catch (const swidopt::ValidationError& err) {
    std::cerr << "validation error: " << err.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "validation error: " << err.what() << '\n';
    return 2;
  } catch (const std::domain_error& err) {
    std::cerr << "validation error: " << err.what() << '\n';
    return 2;
  } catch (const swidopt::QuadratureError& err) {
    std::cerr << "numerical error: " << err.what() << " (estimate " << err.estimate()
              << ", error bound " << err.error_bound() << ")\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "numerical error: " << err.what() << '\n';
    return 3;
  }
}
