#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "swidopt/metrics.hpp"

namespace swidopt::cli {

struct CommonOptions {
  std::string config_path;
  std::string out_path;  // empty writes to stdout
  Unit unit = Unit::Nats;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string reproduce;
};

struct ReportOptions {
  bool gap = false;
  std::string snr_list;  // comma-separated dB values
  std::string m_range;   // "a..b" or single integer
};

int run_optimize(const CommonOptions& options);
int run_region(const CommonOptions& options);
int run_simulate(const CommonOptions& options, const std::string& thresholds_path);
int run_benchmark(const CommonOptions& options);
int run_report(const CommonOptions& options, const ReportOptions& report);

// Serialized content goes to a temp file first and is renamed into place, so
// failed runs never leave partial artifacts.
void write_output(const std::string& out_path, const std::string& content);

}  // namespace swidopt::cli
