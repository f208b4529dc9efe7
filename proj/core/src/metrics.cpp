#include "swidopt/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "swidopt/seld.hpp"
#include "swidopt/threshold_opt.hpp"

namespace swidopt {

double convert_units(double value_nats, Unit to) {
  return to == Unit::Bits ? value_nats / std::log(2.0) : value_nats;
}

double jain_index(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("jain_index: empty input");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("jain_index: negative input");
    sum += v;
    sum_sq += v * v;
  }
  if (sum == 0.0) throw std::invalid_argument("jain_index: all-zero input");
  return sum * sum / (x.size() * sum_sq);
}

std::vector<double> mud_gain_metric(const PerformanceReport& report,
                                    const std::vector<ChannelModel>& models) {
  if (report.R.size() != models.size()) {
    throw std::invalid_argument("mud_gain_metric: report/model length mismatch");
  }
  std::vector<double> gains;
  gains.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    const RateDistribution dist(models[i]);
    gains.push_back(report.R[i] / dist.mean_rate());
  }
  return gains;
}

FairnessSummary fairness_summary(const PerformanceReport& report,
                                 const std::vector<ChannelModel>& models) {
  FairnessSummary summary;
  summary.jain_access = jain_index(report.AR);
  summary.jain_mud_gain = jain_index(mud_gain_metric(report, models));
  summary.basis = report.provenance;
  return summary;
}

std::vector<GapRow> gap_vs_full_feedback(const std::vector<double>& mean_snr_db,
                                         int users_min, int users_max) {
  if (users_min < 1 || users_max < users_min) {
    throw std::invalid_argument("gap_vs_full_feedback: bad user range");
  }
  std::vector<GapRow> rows;
  for (double db : mean_snr_db) {
    const double linear = std::pow(10.0, db / 10.0);
    for (int m = users_min; m <= users_max; ++m) {
      Scenario scenario;
      scenario.users.reserve(m);
      for (int i = 0; i < m; ++i) {
        scenario.users.push_back({i + 1, {FadingFamily::RayleighSISO, linear}});
      }
      scenario.weights.assign(m, 1.0);
      const OptimizationResult swid = optimize_weighted_sum(scenario);
      GapRow row;
      row.mean_snr_db = db;
      row.users = m;
      row.swid_sum = swid.objective_value;
      row.seld_sum = seld_iid_sum_capacity(linear, m);
      row.gap = row.seld_sum - row.swid_sum;
      row.ratio = row.swid_sum / row.seld_sum;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace swidopt
