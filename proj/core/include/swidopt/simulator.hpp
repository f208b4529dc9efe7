#pragma once

#include <cstdint>
#include <vector>

#include "swidopt/analytics.hpp"

namespace swidopt {

struct TerminalBehavior {
  enum class Mode { Honest, OverrideThreshold };
  Mode mode = Mode::Honest;
  double override_threshold = 0.0;

  static TerminalBehavior honest() { return {}; }
  static TerminalBehavior override_with(double threshold) {
    return {Mode::OverrideThreshold, threshold};
  }
};

struct SimConfig {
  std::uint64_t resource_units = 1000000;
  int batches = 20;
  std::uint64_t seed = 0;
  // Aligned to feedback positions; empty means everyone honest.
  std::vector<TerminalBehavior> behaviors;
  int threads = 0;  // 0 = hardware concurrency
  double monitor_epsilon = 0.05;
};

struct FeedbackStats {
  double flags_per_unit = 0.0;
  double mean_flag_position = 0.0;  // 1-based mini-slot of the winning flag
  double idle_fraction = 0.0;
};

// Sufficient statistics for one user's monitor, mergeable across batches by
// plain addition. rate_sum accumulates the requested rate on flagged
// opportunities and zero on silent ones, so rate_sum / opportunities
// estimates the conditional-rate integral.
struct MonitorAccumulator {
  std::uint64_t opportunities = 0;
  std::uint64_t successes = 0;
  double rate_sum = 0.0;
  double rate_sq_sum = 0.0;
  double success_rate_sum = 0.0;
};

struct MonitorState {
  std::vector<int> user_ids;                // feedback order
  std::vector<double> reported_thresholds;  // rate domain
  double epsilon = 0.05;
  // observed: opportunities and rates as the base station sees them (flags
  // and scheduled transmissions only). omniscient: the same quantities
  // evaluated from the true drawn rates, kept for diagnostics.
  std::vector<MonitorAccumulator> observed;
  std::vector<MonitorAccumulator> omniscient;
};

struct MonitorVerdict {
  int user_id = 0;
  double statistic = 0.0;
  bool flagged = false;
  std::uint64_t samples = 0;
  bool sufficient = false;
};

struct SimResult {
  PerformanceReport report;  // provenance MonteCarlo
  FeedbackStats feedback;
  MonitorState monitor;
  std::vector<MonitorVerdict> verdicts;  // detect_misbehavior on the observed side
  // batch-mean standard errors
  std::vector<double> r_stderr;
  std::vector<double> ar_stderr;
  double sum_rate_stderr = 0.0;
  double idle_stderr = 0.0;
  std::uint64_t units = 0;  // actual count: resource_units rounded up to a batch multiple
};

// Ordered-flag protocol Monte Carlo. Batches run on independent RNG
// substreams keyed by (seed, batch, position) and merge in batch order, so
// results are bitwise identical for any thread count.
SimResult simulate(const Scenario& scenario, const ThresholdVector& thresholds,
                   const SimConfig& config);

// Statistic |r*_i (1 - P_hat) / Rc_hat - (M - i)| per user, flagged when it
// exceeds epsilon widened by three delta-method standard errors. Users with
// no opportunity samples are marked insufficient, never flagged.
std::vector<MonitorVerdict> detect_misbehavior(const MonitorState& monitor, int user_count);

struct FeedbackLoadSummary {
  double flags_per_unit = 0.0;
  double mean_flag_position = 0.0;
  double idle_fraction = 0.0;
  double load_ratio_vs_full = 0.0;  // flags per unit vs M always-on messages
};

FeedbackLoadSummary feedback_load_comparison(const FeedbackStats& stats, int user_count);

}  // namespace swidopt
