#include "swidopt/scenario_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace swidopt {

namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

[[noreturn]] void fail(const std::string& message) { throw ValidationError(message); }

double require_number(const json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(what + " must be finite");
  return v;
}

}  // namespace

std::vector<int> ParsedScenario::permutation() const {
  if (sequence.kind == SequenceKind::Given && sequence.permutation.empty()) {
    std::vector<int> identity(models.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
    return identity;
  }
  return order_users(models, sequence);
}

Scenario ParsedScenario::scenario() const {
  const std::vector<int> perm = permutation();
  Scenario s;
  s.seed = seed;
  s.users.reserve(models.size());
  s.weights.reserve(models.size());
  for (int idx : perm) {
    s.users.push_back({user_ids[idx], models[idx]});
    if (objective.kind == ObjectiveKind::WeightedSum && !declared_weights.empty()) {
      s.weights.push_back(declared_weights[idx]);
    } else {
      s.weights.push_back(1.0);
    }
  }
  return s;
}

SimConfig ParsedScenario::sim_config() const {
  const std::vector<int> perm = permutation();
  SimConfig config;
  config.resource_units = resource_units;
  config.batches = batches;
  config.seed = seed;
  config.behaviors.reserve(models.size());
  bool any_override = false;
  for (int idx : perm) {
    config.behaviors.push_back(behaviors[idx]);
    any_override = any_override ||
                   behaviors[idx].mode == TerminalBehavior::Mode::OverrideThreshold;
  }
  if (!any_override) config.behaviors.clear();
  return config;
}

ParsedScenario parse_scenario_file(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    fail(std::string("malformed JSON: ") + err.what());
  }
  if (!doc.is_object()) fail("scenario file must be a JSON object");

  ParsedScenario parsed;
  const bool has_users = doc.contains("users");
  const bool has_network = doc.contains("network");
  if (has_users == has_network) {
    fail("scenario file must contain exactly one of \"users\" or \"network\"");
  }

  if (has_users) {
    const json& users = doc["users"];
    if (!users.is_array() || users.empty()) fail("\"users\" must be a non-empty array");
    for (const json& user : users) {
      if (!user.is_object() || !user.contains("id") || !user.contains("mean_snr_db")) {
        fail("each user needs \"id\" and \"mean_snr_db\"");
      }
      if (!user["id"].is_number_integer()) fail("user id must be an integer");
      const int id = user["id"].get<int>();
      for (int existing : parsed.user_ids) {
        if (existing == id) fail("duplicate user id " + std::to_string(id));
      }
      parsed.user_ids.push_back(id);
      parsed.models.push_back(
          {FadingFamily::RayleighSISO,
           db_to_linear(require_number(user["mean_snr_db"], "mean_snr_db"))});
    }
  } else {
    const json& network = doc["network"];
    if (!network.is_object()) fail("\"network\" must be an object");
    for (const char* key : {"model", "M", "snr_min_db", "snr_max_db"}) {
      if (!network.contains(key)) fail(std::string("network needs \"") + key + "\"");
    }
    if (!network["M"].is_number_integer()) fail("network M must be an integer");
    const int m = network["M"].get<int>();
    if (m < 1) fail("network M must be >= 1");
    const std::string model = network["model"].get<std::string>();
    NetworkSpec spec;
    spec.user_count = m;
    if (model == "identical") {
      spec.model = NetworkModelKind::Identical;
    } else if (model == "model1") {
      spec.model = NetworkModelKind::Model1;
    } else if (model == "model2") {
      spec.model = NetworkModelKind::Model2;
    } else {
      fail("network model must be identical, model1, or model2");
    }
    spec.snr_min = db_to_linear(require_number(network["snr_min_db"], "snr_min_db"));
    spec.snr_max = db_to_linear(require_number(network["snr_max_db"], "snr_max_db"));
    if (spec.snr_min > spec.snr_max) fail("snr_min_db must not exceed snr_max_db");
    parsed.models = build_network(spec);
    for (int i = 1; i <= m; ++i) parsed.user_ids.push_back(i);
  }

  const std::size_t m = parsed.models.size();

  if (doc.contains("sequence")) {
    const json& seq = doc["sequence"];
    if (seq.is_string()) {
      const std::string s = seq.get<std::string>();
      if (s == "ascending") {
        parsed.sequence = SequenceStrategy::ascending();
      } else if (s == "descending") {
        parsed.sequence = SequenceStrategy::descending();
      } else {
        fail("sequence must be ascending, descending, or a permutation of user ids");
      }
    } else if (seq.is_array()) {
      if (seq.size() != m) fail("sequence permutation must list every user id exactly once");
      std::vector<int> perm;
      std::vector<bool> used(m, false);
      for (const json& entry : seq) {
        if (!entry.is_number_integer()) fail("sequence entries must be user ids");
        const int id = entry.get<int>();
        std::size_t idx = m;
        for (std::size_t i = 0; i < m; ++i) {
          if (parsed.user_ids[i] == id) idx = i;
        }
        if (idx == m) fail("sequence references unknown user id " + std::to_string(id));
        if (used[idx]) fail("sequence repeats user id " + std::to_string(id));
        used[idx] = true;
        perm.push_back(static_cast<int>(idx));
      }
      parsed.sequence = SequenceStrategy::given(perm);
    } else {
      fail("sequence must be a string or an array of user ids");
    }
  }

  if (doc.contains("objective")) {
    parsed.has_objective = true;
    const json& objective = doc["objective"];
    if (objective.is_string()) {
      const std::string s = objective.get<std::string>();
      if (s == "proportional_fair") {
        parsed.objective = Objective::proportional_fair();
      } else if (s == "max_sum") {
        parsed.objective = Objective::weighted_sum();
        parsed.declared_weights.assign(m, 1.0);
      } else {
        fail("objective must be max_sum, proportional_fair, or {\"weighted_sum\": [...]}");
      }
    } else if (objective.is_object() && objective.contains("weighted_sum")) {
      const json& weights = objective["weighted_sum"];
      if (!weights.is_array() || weights.size() != m) {
        fail("weighted_sum must list one weight per user");
      }
      parsed.objective = Objective::weighted_sum();
      double total = 0.0;
      for (const json& w : weights) {
        const double v = require_number(w, "weight");
        if (v < 0.0) fail("weights must be nonnegative");
        total += v;
        parsed.declared_weights.push_back(v);
      }
      if (total == 0.0) fail("weights must not all be zero");
    } else {
      fail("objective must be max_sum, proportional_fair, or {\"weighted_sum\": [...]}");
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) fail("seed must be an integer");
    parsed.seed = doc["seed"].get<std::uint64_t>();
  }

  if (doc.contains("sim")) {
    const json& sim = doc["sim"];
    if (!sim.is_object()) fail("\"sim\" must be an object");
    if (sim.contains("resource_units")) {
      if (!sim["resource_units"].is_number_integer() || sim["resource_units"].get<long long>() < 1) {
        fail("resource_units must be a positive integer");
      }
      parsed.resource_units = sim["resource_units"].get<std::uint64_t>();
    }
    if (sim.contains("batches")) {
      if (!sim["batches"].is_number_integer() || sim["batches"].get<int>() < 1) {
        fail("batches must be a positive integer");
      }
      parsed.batches = sim["batches"].get<int>();
    }
  }

  parsed.behaviors.assign(m, TerminalBehavior::honest());
  if (doc.contains("behaviors")) {
    const json& behaviors = doc["behaviors"];
    if (!behaviors.is_object()) fail("\"behaviors\" must map user ids to override thresholds");
    for (const auto& [key, value] : behaviors.items()) {
      int id = 0;
      try {
        id = std::stoi(key);
      } catch (...) {
        fail("behavior keys must be user ids");
      }
      std::size_t idx = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (parsed.user_ids[i] == id) idx = i;
      }
      if (idx == m) fail("behavior references unknown user id " + key);
      const double threshold = require_number(value, "override threshold");
      if (threshold < 0.0) fail("override threshold must be nonnegative");
      parsed.behaviors[idx] = TerminalBehavior::override_with(threshold);
    }
  }

  return parsed;
}

ParsedScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_file(buffer.str());
}

}  // namespace swidopt
