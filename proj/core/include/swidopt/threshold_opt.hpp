#pragma once

#include <string>
#include <vector>

#include "swidopt/analytics.hpp"

namespace swidopt {

enum class ObjectiveKind { WeightedSum, ProportionalFair };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::WeightedSum;
  // WeightedSum only; when empty the scenario's weights are used.
  std::vector<double> weights;

  static Objective weighted_sum(std::vector<double> w = {}) {
    return {ObjectiveKind::WeightedSum, std::move(w)};
  }
  static Objective proportional_fair() { return {ObjectiveKind::ProportionalFair, {}}; }
};

// Two algebraically equivalent ways to run the backward threshold solve.
// PairwiseRecursion folds each step into the previous one in O(M);
// DirectSum re-evaluates the full tail sum at every position in O(M^2) and
// exists as an independent cross-check.
enum class ThresholdRoute { PairwiseRecursion, DirectSum };

struct OptimizationResult {
  ThresholdVector thresholds;
  double objective_value = 0.0;
  PerformanceReport report;
  double stationarity_residual = 0.0;
  // Proportional fairness only: max threshold gap after substituting the
  // implied weights 1/R_i back into the weighted-sum recursion.
  double pf_consistency_residual = 0.0;
  std::vector<std::string> warnings;
};

// Backward solve of the stationarity conditions for Phi = sum_i mu_i R_i.
// The last threshold is 0; zero-weight users get never_flag_threshold.
ThresholdVector weighted_sum_thresholds(const Scenario& scenario,
                                        ThresholdRoute route = ThresholdRoute::PairwiseRecursion,
                                        RateEvalPath path = RateEvalPath::Auto);

OptimizationResult optimize_weighted_sum(const Scenario& scenario,
                                         ThresholdRoute route = ThresholdRoute::PairwiseRecursion,
                                         RateEvalPath path = RateEvalPath::Auto);

// Monotone statistic r * F_R(r) / conditional_rate(r); equals the number of
// users after position i at the proportional-fair threshold.
double pf_statistic(const RateDistribution& dist, double rate_threshold);

// Root of pf_statistic(r) = users_after. Depends only on the user's own
// channel and its position, never on other users.
double pf_threshold(const RateDistribution& dist, int users_after, const RootSpec& spec = {});

OptimizationResult optimize_pf(const Scenario& scenario);

OptimizationResult optimize(const Scenario& scenario, const Objective& objective);

// Phi = sum_i weights_i R_i at arbitrary thresholds.
double objective_value(const Scenario& scenario, const ThresholdVector& thresholds,
                       const std::vector<double>& weights,
                       RateEvalPath path = RateEvalPath::Auto);

// dR_j / dr*_i, 0-based positions. Zero for i > j.
double rate_derivative(const Scenario& scenario, const ThresholdVector& thresholds,
                       std::size_t j, std::size_t i, RateEvalPath path = RateEvalPath::Auto);

std::vector<double> objective_gradient(const Scenario& scenario, const ThresholdVector& thresholds,
                                       const std::vector<double>& weights,
                                       RateEvalPath path = RateEvalPath::Auto);

std::vector<double> objective_gradient_fd(const Scenario& scenario,
                                          const ThresholdVector& thresholds,
                                          const std::vector<double>& weights,
                                          double step = 1e-5,
                                          RateEvalPath path = RateEvalPath::Auto);

// Max |dPhi/dr*_i| over the free thresholds (all but the last), taking the
// worse of the analytic and central finite-difference evaluations, and
// checking that the two agree.
double stationarity_residual(const Scenario& scenario, const ThresholdVector& thresholds,
                             const Objective& objective);

}  // namespace swidopt
