#include "swidopt/threshold_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swidopt {

namespace {

std::vector<double> resolve_weights(const Scenario& scenario, const Objective& objective) {
  const std::vector<double>& w =
      (objective.kind == ObjectiveKind::WeightedSum && !objective.weights.empty())
          ? objective.weights
          : scenario.weights;
  if (w.size() != scenario.users.size()) {
    throw std::invalid_argument("objective weights do not match user count");
  }
  return w;
}

void validate_weights(const std::vector<double>& w) {
  double total = 0.0;
  for (double v : w) {
    if (v < 0.0) throw std::invalid_argument("weights must be nonnegative");
    total += v;
  }
  if (total == 0.0) throw std::invalid_argument("weights must not all be zero");
}

double cdf_at(const RateDistribution& dist, double r) {
  return std::isinf(r) ? 1.0 : dist.cdf(r);
}

// sum_{j>from} mu_j Rc_j(r_j) prod_{from<k<j} F_k(r_k); equals mu_from * r_from
// at a stationary point, including the limit at zero weight.
double weighted_tail_sum(const Scenario& scenario, const ThresholdVector& thresholds,
                         std::size_t from, RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  double acc = 0.0;
  for (std::size_t j = m - 1; j > from; --j) {
    const RateDistribution dj(scenario.users[j].channel);
    const double rj = thresholds.rate[j];
    acc = scenario.weights[j] * conditional_rate(dj, rj, path) + cdf_at(dj, rj) * acc;
  }
  return acc;
}

}  // namespace

ThresholdVector weighted_sum_thresholds(const Scenario& scenario, ThresholdRoute route,
                                        RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  if (m == 0) throw std::invalid_argument("weighted_sum_thresholds: empty scenario");
  const std::vector<double>& w = scenario.weights;
  if (w.size() != m) throw std::invalid_argument("weighted_sum_thresholds: weight length mismatch");
  validate_weights(w);

  ThresholdVector thresholds;
  thresholds.rate.assign(m, 0.0);
  if (m == 1) return thresholds;

  if (route == ThresholdRoute::PairwiseRecursion) {
    double acc = 0.0;  // running value of mu_i * r*_i
    for (std::size_t i = m - 1; i-- > 0;) {
      const RateDistribution next(scenario.users[i + 1].channel);
      const double r_next = thresholds.rate[i + 1];
      acc = w[i + 1] * conditional_rate(next, r_next, path) + cdf_at(next, r_next) * acc;
      thresholds.rate[i] = w[i] > 0.0 ? acc / w[i] : never_flag_threshold;
    }
  } else {
    for (std::size_t i = m - 1; i-- > 0;) {
      double sum = 0.0;
      double between = 1.0;  // product of F_k over positions strictly between i and j
      for (std::size_t j = i + 1; j < m; ++j) {
        const RateDistribution dj(scenario.users[j].channel);
        sum += w[j] * conditional_rate(dj, thresholds.rate[j], path) * between;
        between *= cdf_at(dj, thresholds.rate[j]);
      }
      thresholds.rate[i] = w[i] > 0.0 ? sum / w[i] : never_flag_threshold;
    }
  }
  return thresholds;
}

double pf_statistic(const RateDistribution& dist, double rate_threshold) {
  if (rate_threshold < 0.0) throw std::domain_error("pf_statistic: negative threshold");
  if (rate_threshold == 0.0) return 0.0;
  const double rc = conditional_rate(dist, rate_threshold);
  if (rc == 0.0) return kInf;
  return rate_threshold * dist.cdf(rate_threshold) / rc;
}

double pf_threshold(const RateDistribution& dist, int users_after, const RootSpec& spec) {
  if (users_after < 0) throw std::invalid_argument("pf_threshold: negative users_after");
  if (users_after == 0) return 0.0;
  const double target = users_after;
  auto g = [&dist, target](double r) {
    return r * dist.cdf(r) - target * conditional_rate(dist, r);
  };
  return find_root(g, 0.0, 1.0, spec);
}

double objective_value(const Scenario& scenario, const ThresholdVector& thresholds,
                       const std::vector<double>& weights, RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  if (thresholds.rate.size() != m || weights.size() != m) {
    throw std::invalid_argument("objective_value: length mismatch");
  }
  double phi = 0.0;
  double prefix = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const RateDistribution dist(scenario.users[i].channel);
    phi += weights[i] * conditional_rate(dist, thresholds.rate[i], path) * prefix;
    prefix *= cdf_at(dist, thresholds.rate[i]);
  }
  return phi;
}

double rate_derivative(const Scenario& scenario, const ThresholdVector& thresholds,
                       std::size_t j, std::size_t i, RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  if (j >= m || i >= m || thresholds.rate.size() != m) {
    throw std::invalid_argument("rate_derivative: index out of range");
  }
  if (i > j) return 0.0;
  const RateDistribution di(scenario.users[i].channel);
  const double ri = thresholds.rate[i];
  if (std::isinf(ri)) return 0.0;
  const double fi = di.pdf(ri);
  if (i == j) {
    double prefix = 1.0;
    for (std::size_t k = 0; k < i; ++k) {
      const RateDistribution dk(scenario.users[k].channel);
      prefix *= cdf_at(dk, thresholds.rate[k]);
    }
    return -ri * fi * prefix;
  }
  const RateDistribution dj(scenario.users[j].channel);
  const double rcj = conditional_rate(dj, thresholds.rate[j], path);
  double others = 1.0;  // product of F_k for k < j, k != i
  for (std::size_t k = 0; k < j; ++k) {
    if (k == i) continue;
    const RateDistribution dk(scenario.users[k].channel);
    others *= cdf_at(dk, thresholds.rate[k]);
  }
  return rcj * fi * others;
}

std::vector<double> objective_gradient(const Scenario& scenario, const ThresholdVector& thresholds,
                                       const std::vector<double>& weights, RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  if (thresholds.rate.size() != m || weights.size() != m) {
    throw std::invalid_argument("objective_gradient: length mismatch");
  }
  std::vector<double> cdf(m), pdf(m), rc(m);
  for (std::size_t i = 0; i < m; ++i) {
    const RateDistribution dist(scenario.users[i].channel);
    const double r = thresholds.rate[i];
    cdf[i] = cdf_at(dist, r);
    pdf[i] = std::isinf(r) ? 0.0 : dist.pdf(r);
    rc[i] = conditional_rate(dist, r, path);
  }
  // tail[i] = sum_{j>i} mu_j Rc_j prod_{i<k<j} F_k
  std::vector<double> tail(m, 0.0);
  for (std::size_t i = m - 1; i-- > 0;) {
    tail[i] = weights[i + 1] * rc[i + 1] + cdf[i + 1] * tail[i + 1];
  }
  std::vector<double> grad(m, 0.0);
  double prefix = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = thresholds.rate[i];
    if (std::isinf(r)) {
      grad[i] = 0.0;
    } else {
      grad[i] = pdf[i] * prefix * (tail[i] - weights[i] * r);
    }
    prefix *= cdf[i];
  }
  return grad;
}

std::vector<double> objective_gradient_fd(const Scenario& scenario,
                                          const ThresholdVector& thresholds,
                                          const std::vector<double>& weights, double step,
                                          RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  std::vector<double> grad(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = thresholds.rate[i];
    if (std::isinf(r)) continue;
    ThresholdVector hi = thresholds;
    ThresholdVector lo = thresholds;
    if (r >= step) {
      hi.rate[i] = r + step;
      lo.rate[i] = r - step;
      grad[i] = (objective_value(scenario, hi, weights, path) -
                 objective_value(scenario, lo, weights, path)) /
                (2.0 * step);
    } else {
      // Too close to the boundary for a central stencil; second-order
      // one-sided difference keeps the truncation error comparable.
      hi.rate[i] = r + step;
      ThresholdVector hi2 = thresholds;
      hi2.rate[i] = r + 2.0 * step;
      grad[i] = (-3.0 * objective_value(scenario, thresholds, weights, path) +
                 4.0 * objective_value(scenario, hi, weights, path) -
                 objective_value(scenario, hi2, weights, path)) /
                (2.0 * step);
    }
  }
  return grad;
}

double stationarity_residual(const Scenario& scenario, const ThresholdVector& thresholds,
                             const Objective& objective) {
  std::vector<double> weights;
  if (objective.kind == ObjectiveKind::ProportionalFair) {
    const PerformanceReport report = expected_rates(scenario, thresholds);
    weights.reserve(report.R.size());
    for (double r : report.R) {
      if (!(r > 0.0)) throw std::runtime_error("stationarity_residual: zero rate under PF");
      weights.push_back(1.0 / r);
    }
  } else {
    weights = resolve_weights(scenario, objective);
  }
  const std::vector<double> analytic = objective_gradient(scenario, thresholds, weights);
  const std::vector<double> fd = objective_gradient_fd(scenario, thresholds, weights);
  double residual = 0.0;
  const std::size_t m = scenario.users.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double a = analytic[i];
    const double f = fd[i];
    if (std::abs(a - f) > 1e-4 * std::max(std::abs(a), std::abs(f)) + 1e-7) {
      throw std::runtime_error("stationarity_residual: analytic and finite-difference gradients disagree");
    }
    residual = std::max(residual, std::max(std::abs(a), std::abs(f)));
  }
  return residual;
}

OptimizationResult optimize_weighted_sum(const Scenario& scenario, ThresholdRoute route,
                                         RateEvalPath path) {
  OptimizationResult result;
  result.thresholds = weighted_sum_thresholds(scenario, route, path);
  const std::size_t m = scenario.users.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (scenario.weights[i] > 0.0 && result.thresholds.rate[i] == 0.0) {
      result.warnings.push_back("threshold collapsed to zero before the last position for user " +
                                std::to_string(scenario.users[i].id));
    }
  }
  result.report = expected_rates(scenario, result.thresholds, path);
  // stationary objective in closed form: the first user's terms alone,
  // mu_1 [Rc_1(r_1) + r_1 F_1(r_1)], with the zero-weight limit of mu_1 r_1
  // taken from the tail sum
  const RateDistribution first(scenario.users.front().channel);
  const double r1 = result.thresholds.rate.front();
  const double mu1_r1 = scenario.weights[0] > 0.0
                            ? scenario.weights[0] * r1
                            : weighted_tail_sum(scenario, result.thresholds, 0, path);
  result.objective_value = scenario.weights[0] * conditional_rate(first, r1, path) +
                           cdf_at(first, r1) * mu1_r1;
  result.stationarity_residual =
      stationarity_residual(scenario, result.thresholds, Objective::weighted_sum());
  return result;
}

OptimizationResult optimize_pf(const Scenario& scenario) {
  const std::size_t m = scenario.users.size();
  if (m == 0) throw std::invalid_argument("optimize_pf: empty scenario");
  OptimizationResult result;
  result.thresholds.rate.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const RateDistribution dist(scenario.users[i].channel);
    result.thresholds.rate[i] = pf_threshold(dist, static_cast<int>(m - 1 - i));
  }
  result.report = expected_rates(scenario, result.thresholds);
  double log_sum = 0.0;
  std::vector<double> implied(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = result.report.R[i];
    if (!(r > 0.0)) throw std::runtime_error("optimize_pf: nonpositive rate");
    log_sum += std::log(r);
    implied[i] = 1.0 / r;
  }
  result.objective_value = log_sum;

  Scenario weighted = scenario;
  weighted.weights = implied;
  const ThresholdVector check = weighted_sum_thresholds(weighted);
  double gap = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    gap = std::max(gap, std::abs(check.rate[i] - result.thresholds.rate[i]));
  }
  result.pf_consistency_residual = gap;
  result.stationarity_residual =
      stationarity_residual(scenario, result.thresholds, Objective::proportional_fair());
  return result;
}

OptimizationResult optimize(const Scenario& scenario, const Objective& objective) {
  if (objective.kind == ObjectiveKind::ProportionalFair) {
    return optimize_pf(scenario);
  }
  Scenario resolved = scenario;
  resolved.weights = resolve_weights(scenario, objective);
  return optimize_weighted_sum(resolved);
}

}  // namespace swidopt
