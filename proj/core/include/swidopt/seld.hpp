#pragma once

#include <vector>

#include "swidopt/analytics.hpp"

namespace swidopt {

// Full-feedback selection diversity: the scheduler picks argmax_i mu_i r_i
// every resource unit. Per-user Rc is the expected rate given selection and
// P coincides with the access ratio.
struct SeldReport {
  PerformanceReport report;    // provenance AnalyticSelD
  std::vector<double> weights; // weights actually used
};

// Expected rates and access ratios by quadrature in the rate domain, where
// the cross-user CDF arguments mu_i r / mu_j stay bounded. All weights must
// be positive; drop zero-weight users before calling.
SeldReport seld_rates(const std::vector<ChannelModel>& models,
                      const std::vector<double>& weights,
                      const QuadratureSpec& spec = {});

// Max sum capacity for M i.i.d. users: alternating binomial sum of scaled
// exponential integrals, evaluated with pairwise summation. Beyond M = 30
// the cancellation loses too many digits, so the order-statistic integral
// is used instead.
double seld_iid_sum_capacity(double mean_snr, int user_count);

// Proportional fairness under selection diversity: fixed point of
// weights = 1 / R(weights). Used for baseline comparisons.
SeldReport seld_pf_rates(const std::vector<ChannelModel>& models,
                         int max_iterations = 100, double tolerance = 1e-10);

}  // namespace swidopt
