#include <doctest.h>

#include <cmath>
#include <numeric>
#include <swidopt/simulator.hpp>
#include <swidopt/threshold_opt.hpp>

using namespace swidopt;

namespace {

Scenario iid(int m, double mean_snr) {
  Scenario sc;
  for (int i = 0; i < m; ++i) {
    sc.users.push_back({i + 1, {FadingFamily::RayleighSISO, mean_snr}});
  }
  sc.weights.assign(m, 1.0);
  return sc;
}

SimConfig quick(std::uint64_t units, std::uint64_t seed) {
  SimConfig cfg;
  cfg.resource_units = units;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("single user with zero threshold always wins") {
  Scenario sc = iid(1, 2.0);
  ThresholdVector t;
  t.rate = {0.0};
  const auto res = simulate(sc, t, quick(20000, 7));
  CHECK(res.report.AR[0] == 1.0);
  CHECK(res.feedback.idle_fraction == 0.0);
  CHECK(res.feedback.mean_flag_position == 1.0);
  CHECK(res.feedback.flags_per_unit == 1.0);
  CHECK(res.report.provenance == Provenance::MonteCarlo);
}

TEST_CASE("empirical rates agree with the analytic report") {
  Scenario sc = iid(2, 10.0);
  const auto opt = optimize_weighted_sum(sc);
  const auto res = simulate(sc, opt.thresholds, quick(1000000, 11));
  CHECK(std::abs(res.report.sum_rate - opt.report.sum_rate) <
        3.0 * res.sum_rate_stderr);
  for (int u = 0; u < 2; ++u) {
    CAPTURE(u);
    CHECK(std::abs(res.report.R[u] - opt.report.R[u]) < 3.0 * res.r_stderr[u]);
    CHECK(std::abs(res.report.AR[u] - opt.report.AR[u]) <
          3.0 * res.ar_stderr[u]);
  }
}

TEST_CASE("identical results for any thread count") {
  Scenario sc = iid(3, 4.0);
  ThresholdVector t;
  t.rate = {1.1, 0.6, 0.0};
  SimConfig one = quick(60000, 99);
  one.threads = 1;
  SimConfig many = quick(60000, 99);
  many.threads = 7;
  const auto a = simulate(sc, t, one);
  const auto b = simulate(sc, t, many);
  CHECK(a.report.sum_rate == b.report.sum_rate);
  for (int u = 0; u < 3; ++u) {
    CHECK(a.report.R[u] == b.report.R[u]);
    CHECK(a.report.AR[u] == b.report.AR[u]);
  }
  CHECK(a.feedback.mean_flag_position == b.feedback.mean_flag_position);
  CHECK(a.feedback.idle_fraction == b.feedback.idle_fraction);
}

TEST_CASE("access ratios and idle fraction account for every unit") {
  Scenario sc = iid(3, 2.0);
  ThresholdVector t;
  t.rate = {1.0, 0.7, 0.4};  // positive last threshold leaves idle units
  const auto res = simulate(sc, t, quick(100000, 3));
  const double total =
      std::accumulate(res.report.AR.begin(), res.report.AR.end(), 0.0);
  CHECK(total + res.feedback.idle_fraction == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.feedback.idle_fraction > 0.0);
  CHECK(res.feedback.flags_per_unit <= 1.0);
}

TEST_CASE("raising the first threshold sheds load onto later users") {
  Scenario sc = iid(2, 5.0);
  ThresholdVector low, high;
  low.rate = {0.5, 0.0};
  high.rate = {1.5, 0.0};
  const auto a = simulate(sc, low, quick(200000, 5));
  const auto b = simulate(sc, high, quick(200000, 5));
  const double se =
      3.0 * std::hypot(a.ar_stderr[0], b.ar_stderr[0]);
  CHECK(b.report.AR[0] < a.report.AR[0] - se);
  CHECK(b.feedback.mean_flag_position >= a.feedback.mean_flag_position);
}

TEST_CASE("standard errors shrink like one over sqrt units") {
  Scenario sc = iid(2, 10.0);
  ThresholdVector t;
  t.rate = {1.0, 0.0};
  const auto small = simulate(sc, t, quick(40000, 21));
  const auto large = simulate(sc, t, quick(640000, 21));
  const double shrink = small.sum_rate_stderr / large.sum_rate_stderr;
  CHECK(shrink == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("honest pf users stay under the monitor threshold") {
  Scenario sc = iid(3, 5.0);
  const auto pf = optimize_pf(sc);
  const auto res = simulate(sc, pf.thresholds, quick(1000000, 13));
  REQUIRE(res.verdicts.size() == 3);
  for (const auto& v : res.verdicts) {
    CAPTURE(v.user_id);
    CHECK(v.sufficient);
    CHECK(v.statistic < 0.05);
    CHECK_FALSE(v.flagged);
  }
}

TEST_CASE("threshold-zero cheater at the front is caught") {
  Scenario sc = iid(4, 5.0);
  const auto pf = optimize_pf(sc);
  SimConfig cfg = quick(400000, 17);
  cfg.behaviors = {TerminalBehavior::override_with(0.0), TerminalBehavior::honest(),
                   TerminalBehavior::honest(), TerminalBehavior::honest()};
  const auto res = simulate(sc, pf.thresholds, cfg);
  REQUIRE(res.verdicts.size() == 4);
  CHECK(res.verdicts[0].samples >= 100000);
  CHECK(res.verdicts[0].flagged);
  // The cheater steals opportunities, not statistics: the last user reports
  // threshold zero, so its own statistic stays pinned at zero.
  CHECK(res.verdicts[3].statistic == 0.0);
  CHECK_FALSE(res.verdicts[3].flagged);
}

TEST_CASE("last user with zero threshold is never flagged") {
  Scenario sc = iid(2, 3.0);
  const auto pf = optimize_pf(sc);
  const auto res = simulate(sc, pf.thresholds, quick(50000, 23));
  CHECK(res.verdicts[1].statistic == 0.0);
  CHECK_FALSE(res.verdicts[1].flagged);
}

TEST_CASE("detect_misbehavior marks empty monitors as insufficient") {
  MonitorState st;
  st.user_ids = {1};
  st.reported_thresholds = {0.5};
  st.observed.resize(1);
  st.omniscient.resize(1);
  const auto verdicts = detect_misbehavior(st, 1);
  REQUIRE(verdicts.size() == 1);
  CHECK_FALSE(verdicts[0].sufficient);
  CHECK_FALSE(verdicts[0].flagged);
}

TEST_CASE("feedback load stays far below full feedback") {
  Scenario sc = iid(10, 5.0);
  const auto pf = optimize_pf(sc);
  const auto res = simulate(sc, pf.thresholds, quick(100000, 31));
  const auto load = feedback_load_comparison(res.feedback, 10);
  CHECK(load.flags_per_unit <= 1.0);
  CHECK(load.load_ratio_vs_full < 0.15);
  CHECK(load.mean_flag_position > 1.0);
}

TEST_CASE("simulate validates its inputs") {
  Scenario sc = iid(2, 1.0);
  ThresholdVector wrong;
  wrong.rate = {0.0};
  CHECK_THROWS_AS(simulate(sc, wrong, quick(1000, 1)), std::invalid_argument);
  ThresholdVector neg;
  neg.rate = {-0.5, 0.0};
  CHECK_THROWS_AS(simulate(sc, neg, quick(1000, 1)), std::invalid_argument);
  SimConfig zero = quick(0, 1);
  ThresholdVector ok;
  ok.rate = {0.5, 0.0};
  CHECK_THROWS_AS(simulate(sc, ok, zero), std::invalid_argument);
}
