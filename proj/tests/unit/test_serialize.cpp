#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>
#include <swidopt/serialize.hpp>
#include <swidopt/simulator.hpp>

using namespace swidopt;
using nlohmann::json;

namespace {

Scenario two_user() {
  Scenario sc;
  sc.users = {{7, {FadingFamily::RayleighSISO, 10.0}},
              {3, {FadingFamily::RayleighSISO, 10.0}}};
  sc.weights = {1.0, 1.0};
  return sc;
}

}  // namespace

TEST_CASE("report json carries the exact field names") {
  const auto res = optimize_weighted_sum(two_user());
  const json doc = json::parse(report_to_json(res.report, Unit::Nats));
  REQUIRE(doc.contains("users"));
  REQUIRE(doc["users"].size() == 2);
  const auto& u0 = doc["users"][0];
  for (const char* key : {"user_id", "position", "R", "AR", "Rc", "P"}) {
    CAPTURE(key);
    CHECK(u0.contains(key));
  }
  CHECK(u0["user_id"] == 7);
  CHECK(u0["position"] == 1);
  CHECK(doc["users"][1]["user_id"] == 3);
  CHECK(doc.contains("sum_rate"));
  CHECK(doc.contains("weighted_sum"));
  CHECK(doc["provenance"] == "Analytic");
  CHECK(doc["unit"] == "nats");
}

TEST_CASE("bits conversion divides rates by ln2 and leaves probabilities") {
  const auto res = optimize_weighted_sum(two_user());
  const json nats = json::parse(report_to_json(res.report, Unit::Nats));
  const json bits = json::parse(report_to_json(res.report, Unit::Bits));
  const double ln2 = std::log(2.0);
  CHECK(bits["unit"] == "bits");
  CHECK(bits["sum_rate"].get<double>() ==
        doctest::Approx(nats["sum_rate"].get<double>() / ln2).epsilon(1e-13));
  CHECK(bits["users"][0]["R"].get<double>() ==
        doctest::Approx(nats["users"][0]["R"].get<double>() / ln2).epsilon(1e-13));
  CHECK(bits["users"][0]["AR"].get<double>() ==
        nats["users"][0]["AR"].get<double>());
  CHECK(bits["users"][0]["P"].get<double>() ==
        nats["users"][0]["P"].get<double>());
}

TEST_CASE("optimization json exposes thresholds in both domains") {
  Scenario sc = two_user();
  sc.weights = {0.0, 1.0};
  const auto res = optimize_weighted_sum(sc);
  const json doc =
      json::parse(optimization_to_json(res, ObjectiveKind::WeightedSum, Unit::Nats));
  REQUIRE(doc.contains("thresholds_rate"));
  REQUIRE(doc.contains("thresholds_snr"));
  REQUIRE(doc.contains("objective"));
  REQUIRE(doc.contains("residual"));
  REQUIRE(doc.contains("report"));
  // zero-weight leading user never flags: serialized as null in both domains
  CHECK(doc["thresholds_rate"][0].is_null());
  CHECK(doc["thresholds_snr"][0].is_null());
  CHECK(doc["thresholds_rate"][1] == 0.0);
}

TEST_CASE("pf objective converts as a sum of log rates") {
  Scenario sc = two_user();
  const auto res = optimize(sc, Objective::proportional_fair());
  const json nats =
      json::parse(optimization_to_json(res, ObjectiveKind::ProportionalFair, Unit::Nats));
  const json bits =
      json::parse(optimization_to_json(res, ObjectiveKind::ProportionalFair, Unit::Bits));
  const double expect =
      nats["objective"].get<double>() - 2.0 * std::log(std::log(2.0));
  CHECK(bits["objective"].get<double>() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("simulation json structure") {
  Scenario sc = two_user();
  const auto opt = optimize_weighted_sum(sc);
  SimConfig cfg;
  cfg.resource_units = 20000;
  cfg.seed = 5;
  const auto sim = simulate(sc, opt.thresholds, cfg);
  const json doc = json::parse(simulation_to_json(sim, Unit::Nats));
  REQUIRE(doc.contains("report"));
  REQUIRE(doc.contains("feedback"));
  REQUIRE(doc.contains("monitor"));
  for (const char* key : {"flags_per_unit", "mean_flag_position", "idle_fraction"}) {
    CAPTURE(key);
    CHECK(doc["feedback"].contains(key));
  }
  REQUIRE(doc["monitor"].size() == 2);
  for (const char* key : {"user_id", "statistic", "flagged", "samples"}) {
    CAPTURE(key);
    CHECK(doc["monitor"][0].contains(key));
  }
  CHECK(doc["report"]["provenance"] == "MonteCarlo");
}

TEST_CASE("region csv layout") {
  const std::vector<ChannelModel> models = {{FadingFamily::RayleighSISO, 10.0},
                                            {FadingFamily::RayleighSISO, 1.0}};
  const auto grid = two_user_weight_grid(5);
  auto curve = sweep_region(models, Scheme::MUSwiD, SequenceStrategy::ascending(), grid);
  const std::string csv = region_to_csv(curve, Unit::Nats);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "scheme,sequence,mu_1,mu_2,R_1,R_2,on_hull,unit");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 5);
  CHECK(csv.find("MUSwiD") != std::string::npos);
}

TEST_CASE("gap csv layout") {
  const auto rows = gap_vs_full_feedback({0.0}, 1, 2);
  const std::string csv = gap_table_to_csv(rows, Unit::Nats);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "mean_snr_db,M,swid_sum,seld_sum,gap,ratio,unit");
  std::string first;
  std::getline(lines, first);
  CHECK(first.substr(0, 2) == "0,");
  CHECK(first.find("nats") != std::string::npos);
}

TEST_CASE("csv report round trips the numbers") {
  const auto res = optimize_weighted_sum(two_user());
  const std::string csv = report_to_csv(res.report, Unit::Nats);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "user_id,position,R,AR,Rc,P,sum_rate,weighted_sum,provenance,unit");
  std::string row;
  std::getline(lines, row);
  std::istringstream cells(row);
  std::string cell;
  std::getline(cells, cell, ',');
  CHECK(cell == "7");
  std::getline(cells, cell, ',');
  CHECK(cell == "1");
  std::getline(cells, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(res.report.R[0]).epsilon(1e-15));
}
