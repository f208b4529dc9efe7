#include "swidopt/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "swidopt/seld.hpp"

namespace swidopt {

namespace {

const char* sequence_tag(const SequenceStrategy& strategy) {
  switch (strategy.kind) {
    case SequenceKind::AscendingMeanSnr: return "ascending";
    case SequenceKind::DescendingMeanSnr: return "descending";
    case SequenceKind::Given: return "given";
  }
  return "given";
}

// cross product (b - a) x (c - b); negative = right turn
double turn(const std::vector<double>& a, const std::vector<double>& b,
            const std::vector<double>& c) {
  return (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
}

}  // namespace

std::vector<int> order_users(const std::vector<ChannelModel>& models,
                             const SequenceStrategy& strategy) {
  const std::size_t m = models.size();
  if (strategy.kind == SequenceKind::Given) {
    if (strategy.permutation.size() != m) {
      throw std::invalid_argument("order_users: permutation length mismatch");
    }
    std::vector<bool> seen(m, false);
    for (int idx : strategy.permutation) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= m || seen[idx]) {
        throw std::invalid_argument("order_users: permutation is not a bijection");
      }
      seen[idx] = true;
    }
    return strategy.permutation;
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  if (strategy.kind == SequenceKind::AscendingMeanSnr) {
    std::stable_sort(perm.begin(), perm.end(), [&models](int a, int b) {
      return models[a].mean_snr < models[b].mean_snr;
    });
  } else {
    std::stable_sort(perm.begin(), perm.end(), [&models](int a, int b) {
      return models[a].mean_snr > models[b].mean_snr;
    });
  }
  return perm;
}

std::vector<std::vector<double>> two_user_weight_grid(int steps) {
  if (steps < 2) throw std::invalid_argument("two_user_weight_grid: need at least 2 steps");
  std::vector<std::vector<double>> grid;
  grid.reserve(steps);
  grid.push_back({1.0, 0.0});
  for (int k = 1; k + 1 < steps; ++k) {
    const double theta = k * (std::acos(-1.0) / 2.0) / (steps - 1);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    grid.push_back({c * c, s * s});
  }
  grid.push_back({0.0, 1.0});
  return grid;
}

RegionCurve sweep_region(const std::vector<ChannelModel>& models, Scheme scheme,
                         const SequenceStrategy& sequence,
                         const std::vector<std::vector<double>>& grid) {
  const std::size_t m = models.size();
  if (m == 0) throw std::invalid_argument("sweep_region: no users");
  if (grid.empty()) throw std::invalid_argument("sweep_region: empty weight grid");

  RegionCurve curve;
  curve.points.reserve(grid.size());
  const std::vector<int> perm =
      scheme == Scheme::MUSwiD ? order_users(models, sequence) : std::vector<int>{};
  const std::string tag = scheme == Scheme::MUSwiD ? sequence_tag(sequence) : "none";

  for (const std::vector<double>& weights : grid) {
    if (weights.size() != m) throw std::invalid_argument("sweep_region: weight length mismatch");
    RegionPoint point;
    point.weights = weights;
    point.rates.assign(m, 0.0);
    point.scheme = scheme;
    point.sequence_tag = tag;

    if (scheme == Scheme::MUSwiD) {
      Scenario scenario;
      scenario.users.reserve(m);
      scenario.weights.reserve(m);
      for (int orig : perm) {
        scenario.users.push_back({orig + 1, models[orig]});
        scenario.weights.push_back(weights[orig]);
      }
      const OptimizationResult result = optimize_weighted_sum(scenario);
      for (std::size_t p = 0; p < m; ++p) {
        point.rates[perm[p]] = result.report.R[p];
      }
    } else {
      std::vector<ChannelModel> active_models;
      std::vector<double> active_weights;
      std::vector<int> active_index;
      for (std::size_t i = 0; i < m; ++i) {
        if (weights[i] > 0.0) {
          active_models.push_back(models[i]);
          active_weights.push_back(weights[i]);
          active_index.push_back(static_cast<int>(i));
        }
      }
      if (active_models.empty()) throw std::invalid_argument("sweep_region: all weights zero");
      const SeldReport report = seld_rates(active_models, active_weights);
      for (std::size_t k = 0; k < active_index.size(); ++k) {
        point.rates[active_index[k]] = report.report.R[k];
      }
    }
    curve.points.push_back(std::move(point));
  }

  if (m == 2) {
    RegionCurve hull = timeshare_hull({curve});
    curve.hull = std::move(hull.hull);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      curve.points[i].on_hull = hull.points[i].on_hull;
    }
  }
  return curve;
}

RegionCurve timeshare_hull(const std::vector<RegionCurve>& curves) {
  RegionCurve merged;
  for (const RegionCurve& curve : curves) {
    for (const RegionPoint& point : curve.points) {
      if (point.rates.size() != 2) {
        throw std::invalid_argument("timeshare_hull: only 2-user regions supported");
      }
      merged.points.push_back(point);
      merged.points.back().on_hull = false;
    }
  }
  if (merged.points.empty()) throw std::invalid_argument("timeshare_hull: no points");

  // candidates: indices sorted by x; the chain runs from the highest point
  // to the rightmost point
  std::vector<std::size_t> order(merged.points.size());
  std::iota(order.begin(), order.end(), 0);
  auto xy = [&merged](std::size_t idx) -> const std::vector<double>& {
    return merged.points[idx].rates;
  };
  std::size_t top = 0;
  std::size_t right = 0;
  for (std::size_t i = 1; i < merged.points.size(); ++i) {
    const auto& p = xy(i);
    const auto& t = xy(top);
    const auto& r = xy(right);
    if (p[1] > t[1] || (p[1] == t[1] && p[0] > t[0])) top = i;
    if (p[0] > r[0] || (p[0] == r[0] && p[1] > r[1])) right = i;
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < merged.points.size(); ++i) {
    const auto& p = xy(i);
    if (p[0] >= xy(top)[0] && p[1] >= xy(right)[1]) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&xy](std::size_t a, std::size_t b) {
    if (xy(a)[0] != xy(b)[0]) return xy(a)[0] < xy(b)[0];
    return xy(a)[1] > xy(b)[1];
  });

  // upper chain, left to right; pop on strict left turns so collinear
  // points stay on the hull
  std::vector<std::size_t> chain;
  for (std::size_t idx : candidates) {
    if (!chain.empty() && xy(chain.back())[0] == xy(idx)[0]) {
      continue;  // keep only the highest point at each x
    }
    while (chain.size() >= 2 &&
           turn(xy(chain[chain.size() - 2]), xy(chain.back()), xy(idx)) > 0.0) {
      chain.pop_back();
    }
    chain.push_back(idx);
  }

  for (std::size_t idx : chain) {
    merged.points[idx].on_hull = true;
    merged.hull.push_back(xy(idx));
  }
  // coincident points share hull membership
  for (RegionPoint& point : merged.points) {
    if (point.on_hull) continue;
    for (const std::vector<double>& v : merged.hull) {
      if (point.rates[0] == v[0] && point.rates[1] == v[1]) {
        point.on_hull = true;
        break;
      }
    }
  }
  return merged;
}

}  // namespace swidopt
