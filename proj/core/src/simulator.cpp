#include "swidopt/simulator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "swidopt/rng.hpp"

namespace swidopt {

namespace {

struct BatchAccum {
  std::vector<double> won_rate;
  std::vector<double> tail_rate;
  std::vector<std::uint64_t> wins;
  std::vector<std::uint64_t> tail_count;
  std::uint64_t idle = 0;
  std::uint64_t flag_count = 0;
  std::uint64_t flag_pos_sum = 0;
  std::vector<MonitorAccumulator> observed;
  std::vector<MonitorAccumulator> omniscient;

  explicit BatchAccum(std::size_t m)
      : won_rate(m, 0.0),
        tail_rate(m, 0.0),
        wins(m, 0),
        tail_count(m, 0),
        observed(m),
        omniscient(m) {}
};

BatchAccum run_batch(const Scenario& scenario, const std::vector<double>& reported,
                     const std::vector<double>& effective, std::uint64_t seed,
                     std::uint64_t batch, std::uint64_t units) {
  const std::size_t m = scenario.users.size();
  BatchAccum acc(m);
  std::vector<RngStream> streams;
  streams.reserve(m);
  std::vector<RateDistribution> dists;
  dists.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    streams.push_back(RngStream::substream(seed, batch, i));
    dists.emplace_back(scenario.users[i].channel);
  }

  std::vector<double> rate(m);
  for (std::uint64_t unit = 0; unit < units; ++unit) {
    for (std::size_t i = 0; i < m; ++i) {
      rate[i] = sample_rate(dists[i], streams[i]);
      if (rate[i] >= effective[i]) {
        acc.tail_count[i] += 1;
        acc.tail_rate[i] += rate[i];
      }
    }

    std::size_t winner = m;
    for (std::size_t i = 0; i < m; ++i) {
      // every position before (and including) the winner saw no earlier
      // flag, so each is an opportunity the base station can account for
      MonitorAccumulator& obs = acc.observed[i];
      obs.opportunities += 1;
      if (rate[i] >= effective[i]) {
        winner = i;
        obs.rate_sum += rate[i];
        obs.rate_sq_sum += rate[i] * rate[i];
        if (rate[i] >= reported[i]) {
          obs.successes += 1;
          obs.success_rate_sum += rate[i];
        }
        break;
      }
    }

    bool prefix_below = true;
    for (std::size_t i = 0; i < m && prefix_below; ++i) {
      MonitorAccumulator& omn = acc.omniscient[i];
      omn.opportunities += 1;
      if (rate[i] >= reported[i]) {
        omn.successes += 1;
        omn.rate_sum += rate[i];
        omn.rate_sq_sum += rate[i] * rate[i];
        omn.success_rate_sum += rate[i];
        prefix_below = false;
      }
    }

    if (winner < m) {
      acc.wins[winner] += 1;
      acc.won_rate[winner] += rate[winner];
      acc.flag_count += 1;
      acc.flag_pos_sum += winner + 1;
    } else {
      acc.idle += 1;
    }
  }
  return acc;
}

double batch_stddev_of_mean(const std::vector<double>& batch_means) {
  const std::size_t b = batch_means.size();
  if (b < 2) return 0.0;
  double mean = 0.0;
  for (double v : batch_means) mean += v;
  mean /= b;
  double ss = 0.0;
  for (double v : batch_means) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (b - 1) / b);
}

}  // namespace

SimResult simulate(const Scenario& scenario, const ThresholdVector& thresholds,
                   const SimConfig& config) {
  const std::size_t m = scenario.users.size();
  if (m == 0) throw std::invalid_argument("simulate: empty scenario");
  if (thresholds.rate.size() != m) throw std::invalid_argument("simulate: threshold length mismatch");
  if (config.resource_units < 1) throw std::invalid_argument("simulate: resource_units must be >= 1");
  if (config.batches < 1) throw std::invalid_argument("simulate: batches must be >= 1");
  if (!config.behaviors.empty() && config.behaviors.size() != m) {
    throw std::invalid_argument("simulate: behaviors length mismatch");
  }

  std::vector<double> reported = thresholds.rate;
  std::vector<double> effective = reported;
  for (std::size_t i = 0; i < m; ++i) {
    if (reported[i] < 0.0) throw std::invalid_argument("simulate: negative threshold");
    if (!config.behaviors.empty() &&
        config.behaviors[i].mode == TerminalBehavior::Mode::OverrideThreshold) {
      if (config.behaviors[i].override_threshold < 0.0) {
        throw std::invalid_argument("simulate: negative override threshold");
      }
      effective[i] = config.behaviors[i].override_threshold;
    }
  }

  const int batches = config.batches;
  const std::uint64_t units_per_batch =
      (config.resource_units + batches - 1) / static_cast<std::uint64_t>(batches);
  const std::uint64_t total_units = units_per_batch * batches;

  std::vector<BatchAccum> results(batches, BatchAccum(m));
  unsigned int worker_count = config.threads > 0
                                  ? static_cast<unsigned int>(config.threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
  worker_count = std::min<unsigned int>(worker_count, batches);

  std::atomic<int> next_batch{0};
  auto work = [&]() {
    for (;;) {
      const int b = next_batch.fetch_add(1);
      if (b >= batches) return;
      results[b] = run_batch(scenario, reported, effective, config.seed,
                             static_cast<std::uint64_t>(b), units_per_batch);
    }
  };
  if (worker_count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned int t = 0; t < worker_count; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  SimResult out;
  out.units = total_units;
  out.monitor.user_ids.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.monitor.user_ids.push_back(scenario.users[i].id);
  out.monitor.reported_thresholds = reported;
  out.monitor.epsilon = config.monitor_epsilon;
  out.monitor.observed.assign(m, MonitorAccumulator{});
  out.monitor.omniscient.assign(m, MonitorAccumulator{});

  std::vector<double> won_rate(m, 0.0), tail_rate(m, 0.0);
  std::vector<std::uint64_t> wins(m, 0), tail_count(m, 0);
  std::uint64_t idle = 0, flag_count = 0, flag_pos_sum = 0;
  std::vector<std::vector<double>> r_batch(m, std::vector<double>(batches));
  std::vector<std::vector<double>> ar_batch(m, std::vector<double>(batches));
  std::vector<double> sum_batch(batches, 0.0), idle_batch(batches, 0.0);

  for (int b = 0; b < batches; ++b) {
    const BatchAccum& acc = results[b];
    double batch_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      won_rate[i] += acc.won_rate[i];
      tail_rate[i] += acc.tail_rate[i];
      wins[i] += acc.wins[i];
      tail_count[i] += acc.tail_count[i];
      r_batch[i][b] = acc.won_rate[i] / units_per_batch;
      ar_batch[i][b] = static_cast<double>(acc.wins[i]) / units_per_batch;
      batch_sum += acc.won_rate[i] / units_per_batch;

      out.monitor.observed[i].opportunities += acc.observed[i].opportunities;
      out.monitor.observed[i].successes += acc.observed[i].successes;
      out.monitor.observed[i].rate_sum += acc.observed[i].rate_sum;
      out.monitor.observed[i].rate_sq_sum += acc.observed[i].rate_sq_sum;
      out.monitor.observed[i].success_rate_sum += acc.observed[i].success_rate_sum;
      out.monitor.omniscient[i].opportunities += acc.omniscient[i].opportunities;
      out.monitor.omniscient[i].successes += acc.omniscient[i].successes;
      out.monitor.omniscient[i].rate_sum += acc.omniscient[i].rate_sum;
      out.monitor.omniscient[i].rate_sq_sum += acc.omniscient[i].rate_sq_sum;
      out.monitor.omniscient[i].success_rate_sum += acc.omniscient[i].success_rate_sum;
    }
    idle += acc.idle;
    flag_count += acc.flag_count;
    flag_pos_sum += acc.flag_pos_sum;
    sum_batch[b] = batch_sum;
    idle_batch[b] = static_cast<double>(acc.idle) / units_per_batch;
  }

  PerformanceReport& rep = out.report;
  rep.provenance = Provenance::MonteCarlo;
  rep.rate_product = 1.0;
  const double n = static_cast<double>(total_units);
  for (std::size_t i = 0; i < m; ++i) {
    rep.user_ids.push_back(scenario.users[i].id);
    rep.R.push_back(won_rate[i] / n);
    rep.AR.push_back(static_cast<double>(wins[i]) / n);
    rep.Rc.push_back(tail_rate[i] / n);
    rep.P.push_back(static_cast<double>(tail_count[i]) / n);
    rep.sum_rate += rep.R.back();
    if (!scenario.weights.empty()) rep.weighted_sum += scenario.weights[i] * rep.R.back();
    rep.rate_product *= rep.R.back();
    out.r_stderr.push_back(batch_stddev_of_mean(r_batch[i]));
    out.ar_stderr.push_back(batch_stddev_of_mean(ar_batch[i]));
  }
  if (scenario.weights.empty()) rep.weighted_sum = rep.sum_rate;
  out.sum_rate_stderr = batch_stddev_of_mean(sum_batch);
  out.idle_stderr = batch_stddev_of_mean(idle_batch);

  out.feedback.flags_per_unit = static_cast<double>(flag_count) / n;
  out.feedback.idle_fraction = static_cast<double>(idle) / n;
  out.feedback.mean_flag_position =
      flag_count > 0 ? static_cast<double>(flag_pos_sum) / flag_count : 0.0;

  out.verdicts = detect_misbehavior(out.monitor, static_cast<int>(m));
  return out;
}

std::vector<MonitorVerdict> detect_misbehavior(const MonitorState& monitor, int user_count) {
  const std::size_t m = monitor.user_ids.size();
  if (static_cast<std::size_t>(user_count) != m) {
    throw std::invalid_argument("detect_misbehavior: user count mismatch");
  }
  std::vector<MonitorVerdict> verdicts;
  verdicts.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const MonitorAccumulator& acc = monitor.observed[i];
    MonitorVerdict v;
    v.user_id = monitor.user_ids[i];
    v.samples = acc.opportunities;
    v.sufficient = acc.opportunities > 0;
    const double target = static_cast<double>(m - 1 - i);
    if (v.sufficient) {
      const double n = static_cast<double>(acc.opportunities);
      const double p = static_cast<double>(acc.successes) / n;
      const double mean_rate = acc.rate_sum / n;
      const double r_star = monitor.reported_thresholds[i];
      const double numer = std::isinf(r_star) ? kInf : r_star * (1.0 - p);
      double t;
      if (numer == 0.0) {
        t = 0.0;
      } else if (mean_rate == 0.0) {
        t = kInf;
      } else {
        t = numer / mean_rate;
      }
      v.statistic = std::abs(t - target);

      double widened = monitor.epsilon;
      if (mean_rate > 0.0 && !std::isinf(r_star)) {
        const double var_p = p * (1.0 - p) / n;
        const double var_m = std::max(0.0, acc.rate_sq_sum / n - mean_rate * mean_rate) / n;
        const double cov = (acc.success_rate_sum / n - p * mean_rate) / n;
        const double dp = r_star / mean_rate;
        const double dm = r_star * (1.0 - p) / (mean_rate * mean_rate);
        const double var_t = std::max(0.0, dp * dp * var_p + dm * dm * var_m + 2.0 * dp * dm * cov);
        widened += 3.0 * std::sqrt(var_t);
      }
      v.flagged = v.statistic > widened;
    }
    verdicts.push_back(v);
  }
  return verdicts;
}

FeedbackLoadSummary feedback_load_comparison(const FeedbackStats& stats, int user_count) {
  if (user_count < 1) throw std::invalid_argument("feedback_load_comparison: user_count must be >= 1");
  FeedbackLoadSummary summary;
  summary.flags_per_unit = stats.flags_per_unit;
  summary.mean_flag_position = stats.mean_flag_position;
  summary.idle_fraction = stats.idle_fraction;
  summary.load_ratio_vs_full = stats.flags_per_unit / user_count;
  return summary;
}

}  // namespace swidopt
