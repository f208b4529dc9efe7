#pragma once

#include <string>
#include <vector>

#include "swidopt/channel.hpp"
#include "swidopt/threshold_opt.hpp"

namespace swidopt {

enum class Scheme { MUSwiD, MUSelD };

enum class SequenceKind { AscendingMeanSnr, DescendingMeanSnr, Given };

struct SequenceStrategy {
  SequenceKind kind = SequenceKind::AscendingMeanSnr;
  // Given only: permutation[p] = 0-based original user index at position p.
  std::vector<int> permutation;

  static SequenceStrategy ascending() { return {SequenceKind::AscendingMeanSnr, {}}; }
  static SequenceStrategy descending() { return {SequenceKind::DescendingMeanSnr, {}}; }
  static SequenceStrategy given(std::vector<int> perm) {
    return {SequenceKind::Given, std::move(perm)};
  }
};

// permutation[p] = original index of the user flagging at position p.
std::vector<int> order_users(const std::vector<ChannelModel>& models,
                             const SequenceStrategy& strategy);

// Weights and rates are indexed by original user, not feedback position, so
// points from different sequences are directly comparable.
struct RegionPoint {
  std::vector<double> weights;
  std::vector<double> rates;
  Scheme scheme = Scheme::MUSwiD;
  std::string sequence_tag;
  bool on_hull = false;
};

struct RegionCurve {
  std::vector<RegionPoint> points;
  std::vector<std::vector<double>> hull;  // upper-right hull vertices (2 users)
};

// mu = (cos^2 theta, sin^2 theta) over steps uniform theta in [0, pi/2],
// with the endpoints (1,0) and (0,1) exact.
std::vector<std::vector<double>> two_user_weight_grid(int steps = 101);

// One boundary point per weight vector. MUSwiD points come from the
// weighted-sum optimizer under the given sequence; MUSelD ignores the
// sequence and drops zero-weight users before integrating.
RegionCurve sweep_region(const std::vector<ChannelModel>& models, Scheme scheme,
                         const SequenceStrategy& sequence,
                         const std::vector<std::vector<double>>& grid);

// Upper-right convex hull of the union of the curves' points (2 users).
// Points lying on the hull boundary are flagged; hull segments joining
// points of different curves are exactly the time-sharing lines.
RegionCurve timeshare_hull(const std::vector<RegionCurve>& curves);

}  // namespace swidopt
