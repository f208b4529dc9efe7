#include "swidopt/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "swidopt/numerics.hpp"

namespace swidopt {

namespace {

void check_model(const ChannelModel& model) {
  if (!(model.mean_snr > 0.0)) {
    throw std::invalid_argument("ChannelModel: mean_snr must be positive");
  }
  if (model.family != FadingFamily::RayleighSISO) {
    throw std::invalid_argument("ChannelModel: unsupported fading family");
  }
}

}  // namespace

double snr_pdf(const ChannelModel& model, double snr) {
  check_model(model);
  if (snr < 0.0) throw std::domain_error("snr_pdf: negative snr");
  return std::exp(-snr / model.mean_snr) / model.mean_snr;
}

double snr_cdf(const ChannelModel& model, double snr) {
  check_model(model);
  if (snr <= 0.0) return 0.0;
  return -std::expm1(-snr / model.mean_snr);
}

double rate_from_snr(double snr) {
  if (snr < 0.0) throw std::domain_error("rate_from_snr: negative snr");
  return std::log1p(snr);
}

double snr_from_rate(double rate) {
  if (rate < 0.0) throw std::domain_error("snr_from_rate: negative rate");
  return std::expm1(rate);
}

// f_R(r) = e^r f_Gamma(e^r - 1). The two exponents are combined before
// calling exp so that large r underflows to 0 instead of producing inf * 0.
double RateDistribution::pdf(double r) const {
  if (r < 0.0 || std::isinf(r)) return 0.0;
  const double gbar = model_.mean_snr;
  return std::exp(r - std::expm1(r) / gbar) / gbar;
}

double RateDistribution::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  return -std::expm1(-std::expm1(r) / model_.mean_snr);
}

double RateDistribution::mean_rate() const {
  return exp_scaled_e1(1.0 / model_.mean_snr);
}

double sample_rate(const RateDistribution& dist, RngStream& rng) {
  const double u = rng.uniform01();
  const double gamma = -dist.mean_snr() * std::log1p(-u);
  return std::log1p(gamma);
}

std::vector<ChannelModel> build_network(const NetworkSpec& spec) {
  if (spec.user_count < 1) throw std::invalid_argument("NetworkSpec: user_count must be >= 1");
  if (!(spec.snr_min > 0.0) || !(spec.snr_max > 0.0)) {
    throw std::invalid_argument("NetworkSpec: SNR bounds must be positive");
  }
  if (spec.snr_min > spec.snr_max) {
    throw std::invalid_argument("NetworkSpec: snr_min must not exceed snr_max");
  }
  const int m = spec.user_count;
  std::vector<ChannelModel> models;
  models.reserve(m);
  for (int i = 1; i <= m; ++i) {
    double gbar;
    switch (spec.model) {
      case NetworkModelKind::Identical:
        gbar = spec.snr_max;
        break;
      case NetworkModelKind::Model1:
        gbar = spec.snr_min + (2.0 * i - 1.0) * (spec.snr_max - spec.snr_min) / (2.0 * m);
        break;
      case NetworkModelKind::Model2: {
        const double root = std::sqrt(spec.snr_min) +
                            (2.0 * i - 1.0) / (2.0 * m) *
                                (std::sqrt(spec.snr_max) - std::sqrt(spec.snr_min));
        gbar = root * root;
        break;
      }
    }
    models.push_back({FadingFamily::RayleighSISO, gbar});
  }
  return models;
}

}  // namespace swidopt
