#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swidopt/channel.hpp"
#include "swidopt/region.hpp"
#include "swidopt/simulator.hpp"
#include "swidopt/threshold_opt.hpp"

namespace swidopt {

// Schema or semantic problem in user-supplied configuration. The CLI maps
// this to exit code 2, as opposed to numerical failures which map to 3.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scenario configuration document:
//   {
//     "users": [{"id": 1, "mean_snr_db": 10.0}, ...]   (or "network": {...})
//     "network": {"model": "model1", "M": 10, "snr_min_db": 0, "snr_max_db": 20},
//     "sequence": "ascending" | "descending" | [user ids in feedback order],
//     "objective": {"weighted_sum": [...]} | "proportional_fair" | "max_sum",
//     "seed": 1234,
//     "sim": {"resource_units": 1000000, "batches": 20},
//     "behaviors": {"<user id>": <override threshold, nats>}
//   }
// Exactly one of users/network must be present. Users and weights are kept
// in declared order here; scenario() applies the feedback sequence.
struct ParsedScenario {
  std::vector<int> user_ids;
  std::vector<ChannelModel> models;
  SequenceStrategy sequence = SequenceStrategy::given({});
  bool has_objective = false;
  Objective objective;
  std::vector<double> declared_weights;  // weighted_sum only, declared order
  std::uint64_t seed = 0;
  std::uint64_t resource_units = 1000000;
  int batches = 20;
  std::vector<TerminalBehavior> behaviors;  // declared order

  std::vector<int> permutation() const;  // feedback position -> declared index
  Scenario scenario() const;
  SimConfig sim_config() const;
};

ParsedScenario parse_scenario_file(const std::string& json_text);
ParsedScenario load_scenario_file(const std::string& path);

}  // namespace swidopt
