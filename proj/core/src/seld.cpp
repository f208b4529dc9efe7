#include "swidopt/seld.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swidopt {

namespace {

double pairwise_sum(const std::vector<double>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

void validate_seld_inputs(const std::vector<ChannelModel>& models,
                          const std::vector<double>& weights) {
  if (models.empty()) throw std::invalid_argument("seld_rates: no users");
  if (models.size() != weights.size()) {
    throw std::invalid_argument("seld_rates: weight length mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("seld_rates: weights must be positive");
  }
}

}  // namespace

SeldReport seld_rates(const std::vector<ChannelModel>& models,
                      const std::vector<double>& weights, const QuadratureSpec& spec) {
  validate_seld_inputs(models, weights);
  const std::size_t m = models.size();
  std::vector<RateDistribution> dists;
  dists.reserve(m);
  for (const ChannelModel& model : models) dists.emplace_back(model);

  SeldReport out;
  out.weights = weights;
  PerformanceReport& rep = out.report;
  rep.provenance = Provenance::AnalyticSelD;
  rep.rate_product = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    auto win_prob_density = [&](double r) {
      double p = dists[i].pdf(r);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        p *= dists[j].cdf(weights[i] * r / weights[j]);
      }
      return p;
    };
    const double ri = integrate([&](double r) { return r * win_prob_density(r); }, 0.0, kInf, spec);
    const double ari = m == 1 ? 1.0 : integrate(win_prob_density, 0.0, kInf, spec);

    rep.user_ids.push_back(static_cast<int>(i) + 1);
    rep.R.push_back(ri);
    rep.AR.push_back(ari);
    rep.Rc.push_back(ari > 0.0 ? ri / ari : 0.0);
    rep.P.push_back(ari);
    rep.sum_rate += ri;
    rep.weighted_sum += weights[i] * ri;
    rep.rate_product *= ri;
  }
  return out;
}

double seld_iid_sum_capacity(double mean_snr, int user_count) {
  if (!(mean_snr > 0.0)) throw std::invalid_argument("seld_iid_sum_capacity: mean_snr must be positive");
  if (user_count < 1) throw std::invalid_argument("seld_iid_sum_capacity: user_count must be >= 1");
  const int m = user_count;
  if (m > 30) {
    // order statistic of the best rate: E[max r] = int r d(F^M)
    const RateDistribution dist({FadingFamily::RayleighSISO, mean_snr});
    auto integrand = [&](double r) {
      return r * m * std::pow(dist.cdf(r), m - 1) * dist.pdf(r);
    };
    return integrate(integrand, 0.0, kInf);
  }
  std::vector<double> terms;
  terms.reserve(m);
  double binom = 1.0;  // C(m, i), updated multiplicatively
  for (int i = 1; i <= m; ++i) {
    binom *= static_cast<double>(m - i + 1) / i;
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    terms.push_back(sign * binom * exp_scaled_e1(i / mean_snr));
  }
  return pairwise_sum(terms, 0, terms.size());
}

namespace {

double selection_rate(const std::vector<RateDistribution>& dists,
                      const std::vector<double>& weights, std::size_t i,
                      const QuadratureSpec& spec) {
  auto weighted_density = [&](double r) {
    double p = r * dists[i].pdf(r);
    for (std::size_t j = 0; j < dists.size(); ++j) {
      if (j == i) continue;
      p *= dists[j].cdf(weights[i] * r / weights[j]);
    }
    return p;
  };
  return integrate(weighted_density, 0.0, kInf, spec);
}

}  // namespace

SeldReport seld_pf_rates(const std::vector<ChannelModel>& models, int max_iterations,
                         double tolerance) {
  if (models.empty()) throw std::invalid_argument("seld_pf_rates: no users");
  const std::size_t m = models.size();
  if (m == 1) return seld_rates(models, {1.0});

  std::vector<RateDistribution> dists;
  dists.reserve(m);
  for (const ChannelModel& model : models) dists.emplace_back(model);
  const QuadratureSpec spec{};

  // The plain resubstitution w <- 1/R(w) overshoots violently once selection
  // probabilities saturate (its log-slope far exceeds 1), so no fixed damping
  // factor stabilizes asymmetric networks. Instead each sweep equalizes the
  // products w_i R_i one coordinate at a time: log(w_i R_i) is strictly
  // increasing in log w_i while log(w_0 R_0) falls, so the scalar equation
  // always brackets a root.
  std::vector<double> x(m, 0.0);
  auto weights_at = [&](const std::vector<double>& logw) {
    const double top = *std::max_element(logw.begin(), logw.end());
    std::vector<double> w(m);
    for (std::size_t j = 0; j < m; ++j) w[j] = std::exp(logw[j] - top);
    return w;
  };
  auto safe_log = [](double v) { return v > 0.0 ? std::log(v) : -800.0; };

  for (int sweep = 0; sweep < max_iterations; ++sweep) {
    const SeldReport probe = seld_rates(models, weights_at(x), spec);
    double residual = 0.0;
    const double f0 = x[0] + safe_log(probe.report.R[0]);
    for (std::size_t i = 1; i < m; ++i) {
      residual = std::max(residual, std::abs(x[i] + safe_log(probe.report.R[i]) - f0));
    }
    if (residual < tolerance) return probe;

    for (std::size_t i = 1; i < m; ++i) {
      std::vector<double> logw = x;
      auto gap = [&](double t) {
        logw[i] = t;
        const std::vector<double> w = weights_at(logw);
        return (t + safe_log(selection_rate(dists, w, i, spec))) -
               (x[0] + safe_log(selection_rate(dists, w, 0, spec)));
      };
      double lo = x[i] - 1.0;
      double hi = x[i] + 1.0;
      double glo = gap(lo);
      double ghi = gap(hi);
      double span = 2.0;
      for (int k = 0; k < 12 && glo > 0.0; ++k, span *= 2.0) {
        lo -= span;
        glo = gap(lo);
      }
      span = 2.0;
      for (int k = 0; k < 12 && ghi < 0.0; ++k, span *= 2.0) {
        hi += span;
        ghi = gap(hi);
      }
      if (glo > 0.0 || ghi < 0.0) {
        throw std::runtime_error("seld_pf_rates: equalization bracket failed");
      }
      x[i] = find_root(gap, lo, hi, RootSpec{1e-11, 200});
    }
  }
  throw std::runtime_error("seld_pf_rates: fixed point did not converge");
}

}  // namespace swidopt
