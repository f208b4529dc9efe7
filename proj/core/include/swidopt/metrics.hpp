#pragma once

#include <vector>

#include "swidopt/analytics.hpp"

namespace swidopt {

enum class Unit { Nats, Bits };

// Bits = nats / ln 2. Nats is the internal unit everywhere.
double convert_units(double value_nats, Unit to);

// (sum x)^2 / (M sum x^2), in [1/M, 1]; scale-invariant.
double jain_index(const std::vector<double>& x);

// x_i = R_i divided by the user's unconditional mean rate: the fraction of
// the standalone rate each user keeps under scheduling.
std::vector<double> mud_gain_metric(const PerformanceReport& report,
                                    const std::vector<ChannelModel>& models);

struct FairnessSummary {
  double jain_access = 0.0;    // Jain over access ratios
  double jain_mud_gain = 0.0;  // Jain over normalized rate gains
  Provenance basis = Provenance::Analytic;
};

FairnessSummary fairness_summary(const PerformanceReport& report,
                                 const std::vector<ChannelModel>& models);

struct GapRow {
  double mean_snr_db = 0.0;
  int users = 0;
  double swid_sum = 0.0;  // nats
  double seld_sum = 0.0;  // nats
  double gap = 0.0;       // seld - swid, nats
  double ratio = 0.0;     // swid / seld
};

// For each (mean SNR, M): max sum rate of the switched scheme under equal
// weights vs the full-feedback selection sum capacity, both for i.i.d.
// Rayleigh users.
std::vector<GapRow> gap_vs_full_feedback(const std::vector<double>& mean_snr_db,
                                         int users_min, int users_max);

}  // namespace swidopt
