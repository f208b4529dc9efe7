#pragma once

#include <string>
#include <vector>

#include "swidopt/analytics.hpp"
#include "swidopt/metrics.hpp"
#include "swidopt/region.hpp"
#include "swidopt/seld.hpp"
#include "swidopt/simulator.hpp"
#include "swidopt/threshold_opt.hpp"

namespace swidopt {

std::string to_string(Provenance provenance);
std::string to_string(Unit unit);

// Rates are stored in nats and converted at serialization time; every
// artifact carries a unit field. Never-flag thresholds serialize as JSON
// null (no JSON number represents infinity).

std::string report_to_json(const PerformanceReport& report, Unit unit);
std::string report_to_csv(const PerformanceReport& report, Unit unit);

std::string optimization_to_json(const OptimizationResult& result, ObjectiveKind kind,
                                 Unit unit);

std::string simulation_to_json(const SimResult& result, Unit unit);

std::string region_to_csv(const RegionCurve& curve, Unit unit);

std::string gap_table_to_csv(const std::vector<GapRow>& rows, Unit unit);

}  // namespace swidopt
