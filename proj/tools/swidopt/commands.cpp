#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "swidopt/scenario_file.hpp"
#include "swidopt/serialize.hpp"

namespace swidopt::cli {

namespace {

using nlohmann::json;

constexpr double kFigureSnrDb[] = {-10.0, 0.0, 10.0, 20.0};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ParsedScenario load_config(const CommonOptions& options) {
  if (options.config_path.empty()) {
    throw ValidationError("--config is required for this command");
  }
  ParsedScenario parsed = load_scenario_file(options.config_path);
  if (options.seed) parsed.seed = *options.seed;
  return parsed;
}

std::vector<ChannelModel> scenario_models(const Scenario& scenario) {
  std::vector<ChannelModel> models;
  models.reserve(scenario.users.size());
  for (const UserChannel& user : scenario.users) models.push_back(user.channel);
  return models;
}

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(token, &pos));
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (...) {
      throw ValidationError("--snr expects comma-separated dB values, got \"" + token + "\"");
    }
  }
  if (values.empty()) throw ValidationError("--snr list is empty");
  return values;
}

std::pair<int, int> parse_m_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t pos = 0;
      const int single = std::stoi(text, &pos);
      if (pos != text.size() || single < 1) throw std::invalid_argument(text);
      return {single, single};
    }
    std::size_t pos = 0;
    const int lo = std::stoi(text.substr(0, dots), &pos);
    const std::string hi_text = text.substr(dots + 2);
    const int hi = std::stoi(hi_text, &pos);
    if (lo < 1 || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const ValidationError&) {
    throw;
  } catch (...) {
    throw ValidationError("--m expects N or A..B with 1 <= A <= B, got \"" + text + "\"");
  }
}

ThresholdVector thresholds_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open thresholds file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("malformed thresholds JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("thresholds_rate") || !doc["thresholds_rate"].is_array()) {
    throw ValidationError("thresholds file must contain a \"thresholds_rate\" array");
  }
  double scale = 1.0;
  if (doc.contains("unit") && doc["unit"].is_string() && doc["unit"].get<std::string>() == "bits") {
    scale = std::log(2.0);
  }
  ThresholdVector thresholds;
  for (const json& entry : doc["thresholds_rate"]) {
    if (entry.is_null()) {
      thresholds.rate.push_back(never_flag_threshold);
    } else if (entry.is_number()) {
      const double v = entry.get<double>() * scale;
      if (v < 0.0) throw ValidationError("thresholds must be nonnegative");
      thresholds.rate.push_back(v);
    } else {
      throw ValidationError("threshold entries must be numbers or null");
    }
  }
  if (thresholds.rate.empty()) throw ValidationError("thresholds file lists no thresholds");
  return thresholds;
}

// Proportional-fair threshold sweeps behind figs. 2 and 3: thresholds vs the
// number of users still waiting in the sequence, one curve per average SNR.
std::string pf_threshold_table(bool snr_domain, Unit unit) {
  std::ostringstream out;
  if (snr_domain) {
    out << "mean_snr_db,users_after,threshold_snr,normalized_threshold_snr,unit\n";
  } else {
    out << "mean_snr_db,users_after,threshold,normalized_threshold,unit\n";
  }
  for (double db : kFigureSnrDb) {
    const double linear = std::pow(10.0, db / 10.0);
    const RateDistribution dist({FadingFamily::RayleighSISO, linear});
    const double mean_rate = dist.mean_rate();
    for (int after = 0; after <= 19; ++after) {
      const double r_star = pf_threshold(dist, after);
      if (snr_domain) {
        const double g_star = std::expm1(r_star);
        out << fmt(db) << ',' << after << ',' << fmt(g_star) << ',' << fmt(g_star / linear)
            << ",linear\n";
      } else {
        out << fmt(db) << ',' << after << ',' << fmt(convert_units(r_star, unit)) << ','
            << fmt(r_star / mean_rate) << ',' << to_string(unit) << '\n';
      }
    }
  }
  return out.str();
}

std::string rate_pdf_table(Unit unit) {
  std::ostringstream out;
  out << "mean_snr_db,normalized_rate,density,unit\n";
  for (double db : kFigureSnrDb) {
    const double linear = std::pow(10.0, db / 10.0);
    const RateDistribution dist({FadingFamily::RayleighSISO, linear});
    const double mean = dist.mean_rate();
    for (int step = 1; step <= 250; ++step) {
      const double x = 0.02 * step;  // rate relative to the per-channel mean
      out << fmt(db) << ',' << fmt(x) << ',' << fmt(mean * dist.pdf(x * mean)) << ','
          << to_string(unit) << '\n';
    }
  }
  return out.str();
}

struct ComparisonRow {
  std::string model;
  int users = 0;
  std::string scheme;
  std::string objective;
  std::string sequence;
  double sum_rate = 0.0;
  double jain_access = 0.0;
  double jain_mud_gain = 0.0;
};

ComparisonRow swid_row(const std::vector<ChannelModel>& models, const std::string& model_name,
                       ObjectiveKind kind, const SequenceStrategy& sequence,
                       const std::string& sequence_name) {
  const std::vector<int> perm = order_users(models, sequence);
  Scenario scenario;
  for (int idx : perm) scenario.users.push_back({idx + 1, models[idx]});
  scenario.weights.assign(models.size(), 1.0);
  const OptimizationResult result = kind == ObjectiveKind::ProportionalFair
                                        ? optimize_pf(scenario)
                                        : optimize_weighted_sum(scenario);
  const FairnessSummary fairness =
      fairness_summary(result.report, scenario_models(scenario));
  ComparisonRow row;
  row.model = model_name;
  row.users = static_cast<int>(models.size());
  row.scheme = "MUSwiD";
  row.objective = kind == ObjectiveKind::ProportionalFair ? "proportional_fair" : "max_sum";
  row.sequence = sequence_name;
  row.sum_rate = result.report.sum_rate;
  row.jain_access = fairness.jain_access;
  row.jain_mud_gain = fairness.jain_mud_gain;
  return row;
}

ComparisonRow seld_row(const std::vector<ChannelModel>& models, const std::string& model_name,
                       ObjectiveKind kind) {
  const SeldReport report = kind == ObjectiveKind::ProportionalFair
                                ? seld_pf_rates(models)
                                : seld_rates(models, std::vector<double>(models.size(), 1.0));
  const FairnessSummary fairness = fairness_summary(report.report, models);
  ComparisonRow row;
  row.model = model_name;
  row.users = static_cast<int>(models.size());
  row.scheme = "MUSelD";
  row.objective = kind == ObjectiveKind::ProportionalFair ? "proportional_fair" : "max_sum";
  row.sequence = "none";
  row.sum_rate = report.report.sum_rate;
  row.jain_access = fairness.jain_access;
  row.jain_mud_gain = fairness.jain_mud_gain;
  return row;
}

// Figs. 7-10: asymmetric networks spanning 0 to 20 dB, swept over the user
// count. Model 1 carries both objectives, model 2 the proportional-fair one.
std::string comparison_table(NetworkModelKind model_kind, bool include_max_sum, bool fairness,
                             Unit unit) {
  const std::string model_name = model_kind == NetworkModelKind::Model1 ? "model1" : "model2";
  std::ostringstream out;
  if (fairness) {
    out << "model,M,scheme,objective,sequence,jain_access,jain_mud_gain\n";
  } else {
    out << "model,M,scheme,objective,sequence,sum_rate,unit\n";
  }
  for (int m = 2; m <= 10; ++m) {
    NetworkSpec spec;
    spec.user_count = m;
    spec.model = model_kind;
    spec.snr_min = 1.0;    // 0 dB
    spec.snr_max = 100.0;  // 20 dB
    const std::vector<ChannelModel> models = build_network(spec);

    std::vector<ComparisonRow> rows;
    std::vector<ObjectiveKind> kinds{ObjectiveKind::ProportionalFair};
    if (include_max_sum) kinds.insert(kinds.begin(), ObjectiveKind::WeightedSum);
    for (ObjectiveKind kind : kinds) {
      rows.push_back(seld_row(models, model_name, kind));
      rows.push_back(swid_row(models, model_name, kind, SequenceStrategy::ascending(), "ascending"));
      rows.push_back(swid_row(models, model_name, kind, SequenceStrategy::descending(), "descending"));
    }
    for (const ComparisonRow& row : rows) {
      out << row.model << ',' << row.users << ',' << row.scheme << ',' << row.objective << ','
          << row.sequence << ',';
      if (fairness) {
        out << fmt(row.jain_access) << ',' << fmt(row.jain_mud_gain) << '\n';
      } else {
        out << fmt(convert_units(row.sum_rate, unit)) << ',' << to_string(unit) << '\n';
      }
    }
  }
  return out.str();
}

std::string region_csv_for_models(const std::vector<ChannelModel>& models, Unit unit) {
  if (models.size() != 2) {
    throw ValidationError("region sweeps support exactly 2 users");
  }
  const auto grid = two_user_weight_grid();
  const RegionCurve seld = sweep_region(models, Scheme::MUSelD, SequenceStrategy::ascending(), grid);
  const RegionCurve asc = sweep_region(models, Scheme::MUSwiD, SequenceStrategy::ascending(), grid);
  const RegionCurve desc =
      sweep_region(models, Scheme::MUSwiD, SequenceStrategy::descending(), grid);
  const RegionCurve merged = timeshare_hull({seld, asc, desc});
  return region_to_csv(merged, unit);
}

}  // namespace

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write output file: " + temp.string());
    out << content;
    if (!out.good()) throw std::runtime_error("short write to " + temp.string());
  }
  fs::rename(temp, target);
}

int run_optimize(const CommonOptions& options) {
  if (!options.reproduce.empty()) {
    if (options.reproduce == "fig2") {
      write_output(options.out_path, pf_threshold_table(false, options.unit));
      return 0;
    }
    if (options.reproduce == "fig3") {
      write_output(options.out_path, pf_threshold_table(true, options.unit));
      return 0;
    }
    throw ValidationError("optimize supports --reproduce fig2 or fig3");
  }
  const ParsedScenario parsed = load_config(options);
  if (!parsed.has_objective) {
    throw ValidationError("optimize requires an \"objective\" in the scenario file");
  }
  const Scenario scenario = parsed.scenario();
  const OptimizationResult result = optimize(scenario, parsed.objective);
  write_output(options.out_path,
               optimization_to_json(result, parsed.objective.kind, options.unit));
  return 0;
}

int run_region(const CommonOptions& options) {
  if (!options.reproduce.empty()) {
    if (options.reproduce != "fig1") {
      throw ValidationError("region supports --reproduce fig1");
    }
    const std::vector<ChannelModel> models{{FadingFamily::RayleighSISO, 10.0},
                                           {FadingFamily::RayleighSISO, 1.0}};
    write_output(options.out_path, region_csv_for_models(models, options.unit));
    return 0;
  }
  const ParsedScenario parsed = load_config(options);
  write_output(options.out_path, region_csv_for_models(parsed.models, options.unit));
  return 0;
}

int run_simulate(const CommonOptions& options, const std::string& thresholds_path) {
  const ParsedScenario parsed = load_config(options);
  const Scenario scenario = parsed.scenario();
  ThresholdVector thresholds;
  if (!thresholds_path.empty()) {
    thresholds = thresholds_from_file(thresholds_path);
    if (thresholds.rate.size() != scenario.users.size()) {
      throw ValidationError("thresholds file does not match the scenario user count");
    }
  } else if (parsed.has_objective) {
    thresholds = optimize(scenario, parsed.objective).thresholds;
  } else {
    throw ValidationError("simulate needs --thresholds or an \"objective\" in the scenario file");
  }
  SimConfig config = parsed.sim_config();
  if (options.seed) config.seed = *options.seed;
  config.threads = options.threads;
  const SimResult result = simulate(scenario, thresholds, config);
  write_output(options.out_path, simulation_to_json(result, options.unit));
  return 0;
}

int run_benchmark(const CommonOptions& options) {
  const ParsedScenario parsed = load_config(options);
  SeldReport report;
  if (parsed.has_objective && parsed.objective.kind == ObjectiveKind::ProportionalFair) {
    report = seld_pf_rates(parsed.models);
    report.report.user_ids = parsed.user_ids;
  } else {
    std::vector<double> weights = parsed.declared_weights;
    if (weights.empty()) weights.assign(parsed.models.size(), 1.0);
    std::vector<ChannelModel> active_models;
    std::vector<double> active_weights;
    std::vector<int> active_ids;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) {
        active_models.push_back(parsed.models[i]);
        active_weights.push_back(weights[i]);
        active_ids.push_back(parsed.user_ids[i]);
      }
    }
    report = seld_rates(active_models, active_weights);
    report.report.user_ids = active_ids;
  }
  write_output(options.out_path, report_to_json(report.report, options.unit));
  return 0;
}

int run_report(const CommonOptions& options, const ReportOptions& report) {
  if (!options.reproduce.empty()) {
    const std::string& fig = options.reproduce;
    if (fig == "fig4") {
      write_output(options.out_path, rate_pdf_table(options.unit));
    } else if (fig == "fig5" || fig == "fig6") {
      const auto rows = gap_vs_full_feedback({0.0, 6.0, 12.0, 18.0}, 1, 20);
      write_output(options.out_path, gap_table_to_csv(rows, options.unit));
    } else if (fig == "fig7") {
      write_output(options.out_path,
                   comparison_table(NetworkModelKind::Model1, true, false, options.unit));
    } else if (fig == "fig8") {
      write_output(options.out_path,
                   comparison_table(NetworkModelKind::Model1, true, true, options.unit));
    } else if (fig == "fig9") {
      write_output(options.out_path,
                   comparison_table(NetworkModelKind::Model2, false, false, options.unit));
    } else if (fig == "fig10") {
      write_output(options.out_path,
                   comparison_table(NetworkModelKind::Model2, false, true, options.unit));
    } else {
      throw ValidationError("report supports --reproduce fig4 through fig10");
    }
    return 0;
  }
  if (report.gap) {
    const std::vector<double> snr = parse_snr_list(report.snr_list.empty() ? "0,6,12,18"
                                                                           : report.snr_list);
    const auto [lo, hi] = parse_m_range(report.m_range.empty() ? "1..20" : report.m_range);
    write_output(options.out_path, gap_table_to_csv(gap_vs_full_feedback(snr, lo, hi), options.unit));
    return 0;
  }
  throw ValidationError("report requires --gap or --reproduce figN");
}

}  // namespace swidopt::cli
