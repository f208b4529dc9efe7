#pragma once

#include <cstdint>
#include <vector>

#include "swidopt/rng.hpp"

namespace swidopt {

enum class FadingFamily { RayleighSISO };

// SNR-domain channel description. mean_snr is a linear power ratio; dB
// conversion happens at the CLI boundary only.
struct ChannelModel {
  FadingFamily family = FadingFamily::RayleighSISO;
  double mean_snr = 1.0;
};

double snr_pdf(const ChannelModel& model, double snr);
double snr_cdf(const ChannelModel& model, double snr);

// r = log(1 + snr), in nats/s/Hz.
double rate_from_snr(double snr);
double snr_from_rate(double rate);

// Distribution of the achievable rate r = log(1 + gamma) induced by a
// ChannelModel. pdf/cdf/mean_rate are exact closed forms for Rayleigh.
class RateDistribution {
 public:
  explicit RateDistribution(ChannelModel model) : model_(model) {}

  const ChannelModel& model() const { return model_; }
  double mean_snr() const { return model_.mean_snr; }

  double pdf(double r) const;
  double cdf(double r) const;
  double mean_rate() const;

 private:
  ChannelModel model_;
};

// Inverse-CDF draw: gamma ~ Exponential(mean_snr), rate = log(1 + gamma).
double sample_rate(const RateDistribution& dist, RngStream& rng);

enum class NetworkModelKind { Identical, Model1, Model2 };

struct NetworkSpec {
  int user_count = 1;
  NetworkModelKind model = NetworkModelKind::Identical;
  double snr_min = 1.0;  // linear
  double snr_max = 1.0;  // linear
};

// Mean-SNR profiles across users. Model1 spaces the means linearly between
// snr_min and snr_max, Model2 spaces their square roots linearly, Identical
// gives everyone snr_max. Index i is the 1-based user index before any
// sequence reordering.
std::vector<ChannelModel> build_network(const NetworkSpec& spec);

}  // namespace swidopt
