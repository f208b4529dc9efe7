#include "swidopt/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace swidopt {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json report_json(const PerformanceReport& report, Unit unit) {
  json users = json::array();
  for (std::size_t i = 0; i < report.size(); ++i) {
    users.push_back({{"user_id", report.user_ids[i]},
                     {"position", i + 1},
                     {"R", convert_units(report.R[i], unit)},
                     {"AR", report.AR[i]},
                     {"Rc", convert_units(report.Rc[i], unit)},
                     {"P", report.P[i]}});
  }
  return json{{"users", users},
              {"sum_rate", convert_units(report.sum_rate, unit)},
              {"weighted_sum", convert_units(report.weighted_sum, unit)},
              {"provenance", to_string(report.provenance)},
              {"unit", to_string(unit)}};
}

}  // namespace

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Analytic: return "Analytic";
    case Provenance::MonteCarlo: return "MonteCarlo";
    case Provenance::AnalyticSelD: return "Analytic-SelD";
  }
  return "Analytic";
}

std::string to_string(Unit unit) { return unit == Unit::Bits ? "bits" : "nats"; }

std::string report_to_json(const PerformanceReport& report, Unit unit) {
  return report_json(report, unit).dump(2) + "\n";
}

std::string report_to_csv(const PerformanceReport& report, Unit unit) {
  std::ostringstream out;
  out << "user_id,position,R,AR,Rc,P,sum_rate,weighted_sum,provenance,unit\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    out << report.user_ids[i] << ',' << i + 1 << ',' << fmt(convert_units(report.R[i], unit))
        << ',' << fmt(report.AR[i]) << ',' << fmt(convert_units(report.Rc[i], unit)) << ','
        << fmt(report.P[i]) << ",,,,\n";
  }
  out << ",,,,,," << fmt(convert_units(report.sum_rate, unit)) << ','
      << fmt(convert_units(report.weighted_sum, unit)) << ',' << to_string(report.provenance)
      << ',' << to_string(unit) << '\n';
  return out.str();
}

std::string optimization_to_json(const OptimizationResult& result, ObjectiveKind kind,
                                 Unit unit) {
  json thresholds_rate = json::array();
  json thresholds_snr = json::array();
  for (double r : result.thresholds.rate) {
    if (std::isinf(r)) {
      thresholds_rate.push_back(nullptr);
      thresholds_snr.push_back(nullptr);
    } else {
      thresholds_rate.push_back(convert_units(r, unit));
      thresholds_snr.push_back(std::expm1(r));
    }
  }
  double objective = result.objective_value;
  if (unit == Unit::Bits) {
    if (kind == ObjectiveKind::WeightedSum) {
      objective = convert_units(objective, unit);
    } else {
      // sum of log rates: each log argument scales by 1/ln 2
      objective -= static_cast<double>(result.thresholds.size()) * std::log(std::log(2.0));
    }
  }
  json doc{{"thresholds_rate", thresholds_rate},
           {"thresholds_snr", thresholds_snr},
           {"objective", objective},
           {"residual", result.stationarity_residual},
           {"report", report_json(result.report, unit)},
           {"unit", to_string(unit)}};
  if (kind == ObjectiveKind::ProportionalFair) {
    doc["pf_consistency_residual"] = result.pf_consistency_residual;
  }
  if (!result.warnings.empty()) doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

std::string simulation_to_json(const SimResult& result, Unit unit) {
  json monitor = json::array();
  for (const MonitorVerdict& v : result.verdicts) {
    json entry{{"user_id", v.user_id},
               {"statistic", std::isinf(v.statistic) ? json(nullptr) : json(v.statistic)},
               {"flagged", v.flagged},
               {"samples", v.samples}};
    if (!v.sufficient) entry["insufficient_data"] = true;
    monitor.push_back(entry);
  }
  json stderr_block{{"R", json::array()},
                    {"AR", json::array()},
                    {"sum_rate", convert_units(result.sum_rate_stderr, unit)},
                    {"idle_fraction", result.idle_stderr}};
  for (double v : result.r_stderr) stderr_block["R"].push_back(convert_units(v, unit));
  for (double v : result.ar_stderr) stderr_block["AR"].push_back(v);
  json doc{{"report", report_json(result.report, unit)},
           {"feedback",
            {{"flags_per_unit", result.feedback.flags_per_unit},
             {"mean_flag_position", result.feedback.mean_flag_position},
             {"idle_fraction", result.feedback.idle_fraction}}},
           {"monitor", monitor},
           {"stderr", stderr_block},
           {"units", result.units},
           {"unit", to_string(unit)}};
  return doc.dump(2) + "\n";
}

std::string region_to_csv(const RegionCurve& curve, Unit unit) {
  std::ostringstream out;
  const std::size_t m = curve.points.empty() ? 0 : curve.points.front().weights.size();
  out << "scheme,sequence";
  for (std::size_t i = 1; i <= m; ++i) out << ",mu_" << i;
  for (std::size_t i = 1; i <= m; ++i) out << ",R_" << i;
  out << ",on_hull,unit\n";
  for (const RegionPoint& point : curve.points) {
    out << (point.scheme == Scheme::MUSwiD ? "MUSwiD" : "MUSelD") << ',' << point.sequence_tag;
    for (double w : point.weights) out << ',' << fmt(w);
    for (double r : point.rates) out << ',' << fmt(convert_units(r, unit));
    out << ',' << (point.on_hull ? 1 : 0) << ',' << to_string(unit) << '\n';
  }
  return out.str();
}

std::string gap_table_to_csv(const std::vector<GapRow>& rows, Unit unit) {
  std::ostringstream out;
  out << "mean_snr_db,M,swid_sum,seld_sum,gap,ratio,unit\n";
  for (const GapRow& row : rows) {
    out << fmt(row.mean_snr_db) << ',' << row.users << ','
        << fmt(convert_units(row.swid_sum, unit)) << ',' << fmt(convert_units(row.seld_sum, unit))
        << ',' << fmt(convert_units(row.gap, unit)) << ',' << fmt(row.ratio) << ','
        << to_string(unit) << '\n';
  }
  return out.str();
}

}  // namespace swidopt
