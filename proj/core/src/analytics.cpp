#include "swidopt/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace swidopt {

std::vector<double> snr_threshold_view(const ThresholdVector& thresholds) {
  std::vector<double> out;
  out.reserve(thresholds.rate.size());
  for (double r : thresholds.rate) {
    if (r < 0.0) throw std::domain_error("snr_threshold_view: negative threshold");
    out.push_back(std::expm1(r));
  }
  return out;
}

namespace {

double conditional_rate_closed_form(const RateDistribution& dist, double threshold) {
  const double gbar = dist.mean_snr();
  if (std::isinf(threshold)) return 0.0;
  const double gstar = std::expm1(threshold);
  const double tail = std::exp(-gstar / gbar);
  if (tail == 0.0) return 0.0;
  if (std::isinf(gstar)) return 0.0;
  return tail * (threshold + exp_scaled_e1((1.0 + gstar) / gbar));
}

double conditional_rate_by_quadrature(const RateDistribution& dist, double threshold) {
  if (std::isinf(threshold)) return 0.0;
  auto integrand = [&dist](double r) { return r * dist.pdf(r); };
  return integrate(integrand, threshold, kInf);
}

}  // namespace

double conditional_rate(const RateDistribution& dist, double threshold, RateEvalPath path) {
  if (threshold < 0.0) throw std::domain_error("conditional_rate: negative threshold");
  switch (path) {
    case RateEvalPath::ClosedForm:
      return conditional_rate_closed_form(dist, threshold);
    case RateEvalPath::Quadrature:
      return conditional_rate_by_quadrature(dist, threshold);
    case RateEvalPath::Auto:
      if (dist.model().family == FadingFamily::RayleighSISO) {
        return conditional_rate_closed_form(dist, threshold);
      }
      return conditional_rate_by_quadrature(dist, threshold);
  }
  return 0.0;
}

PerformanceReport expected_rates(const Scenario& scenario, const ThresholdVector& thresholds,
                                 RateEvalPath path) {
  const std::size_t m = scenario.users.size();
  if (m == 0) throw std::invalid_argument("expected_rates: empty scenario");
  if (thresholds.rate.size() != m) {
    throw std::invalid_argument("expected_rates: threshold/user length mismatch");
  }
  if (!scenario.weights.empty() && scenario.weights.size() != m) {
    throw std::invalid_argument("expected_rates: weight/user length mismatch");
  }

  PerformanceReport report;
  report.user_ids.reserve(m);
  report.R.reserve(m);
  report.AR.reserve(m);
  report.Rc.reserve(m);
  report.P.reserve(m);
  report.provenance = Provenance::Analytic;

  double prefix = 1.0;  // product of F_{R_j}(r*_j) over earlier positions
  double product = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const RateDistribution dist(scenario.users[i].channel);
    const double r_star = thresholds.rate[i];
    if (r_star < 0.0) throw std::domain_error("expected_rates: negative threshold");
    const double cdf = std::isinf(r_star) ? 1.0 : dist.cdf(r_star);
    const double tail = 1.0 - cdf;
    const double rc = conditional_rate(dist, r_star, path);

    report.user_ids.push_back(scenario.users[i].id);
    report.Rc.push_back(rc);
    report.P.push_back(tail);
    report.R.push_back(rc * prefix);
    report.AR.push_back(tail * prefix);

    report.sum_rate += report.R.back();
    if (!scenario.weights.empty()) {
      report.weighted_sum += scenario.weights[i] * report.R.back();
    }
    product *= report.R.back();
    prefix *= cdf;
  }
  if (scenario.weights.empty()) report.weighted_sum = report.sum_rate;
  report.rate_product = product;
  return report;
}

}  // namespace swidopt
