#pragma once

#include <cstdint>
#include <vector>

#include "swidopt/channel.hpp"
#include "swidopt/numerics.hpp"

namespace swidopt {

// Threshold value meaning "this user never flags": the rate CDF saturates at
// 1 and the conditional rate vanishes, so the user is transparent to everyone
// behind it in the sequence. Produced by the optimizer for zero-weight users.
inline constexpr double never_flag_threshold = kInf;

struct UserChannel {
  int id = 0;
  ChannelModel channel;
};

// Users listed in feedback-sequence order: position 1 flags first. Weights
// belong to the optimizer; analytics ignore them.
struct Scenario {
  std::vector<UserChannel> users;
  std::vector<double> weights;
  std::uint64_t seed = 0;
};

// Per-user rate thresholds aligned to feedback order, in nats/s/Hz.
// never_flag_threshold is a legal entry.
struct ThresholdVector {
  std::vector<double> rate;

  std::size_t size() const { return rate.size(); }
  double operator[](std::size_t i) const { return rate[i]; }
};

// gamma*_i = e^{r*_i} - 1 elementwise.
std::vector<double> snr_threshold_view(const ThresholdVector& thresholds);

enum class Provenance { Analytic, MonteCarlo, AnalyticSelD };

struct PerformanceReport {
  std::vector<int> user_ids;
  std::vector<double> R;   // unconditional expected rates
  std::vector<double> AR;  // access ratios
  std::vector<double> Rc;  // conditional expected rates
  std::vector<double> P;   // per-user above-threshold probabilities
  double sum_rate = 0.0;
  double weighted_sum = 0.0;
  double rate_product = 0.0;
  Provenance provenance = Provenance::Analytic;

  std::size_t size() const { return R.size(); }
};

// Evaluation route for rate integrals. Auto resolves to the closed form for
// Rayleigh channels and to adaptive quadrature otherwise; forcing Quadrature
// gives an independent cross-check of the closed forms.
enum class RateEvalPath { Auto, ClosedForm, Quadrature };

// E[r | r >= threshold] * P(r >= threshold), i.e. the upper tail integral of
// r * pdf(r). Zero at an infinite threshold.
double conditional_rate(const RateDistribution& dist, double threshold,
                        RateEvalPath path = RateEvalPath::Auto);

// Full analytic report for one scenario and threshold vector. Prefix
// products of the below-threshold CDFs are computed in one pass and shared
// between the rate and access-ratio columns.
PerformanceReport expected_rates(const Scenario& scenario, const ThresholdVector& thresholds,
                                 RateEvalPath path = RateEvalPath::Auto);

}  // namespace swidopt
