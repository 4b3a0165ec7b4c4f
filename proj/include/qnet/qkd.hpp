#pragma once

#include <cstddef>
#include <vector>

namespace qnet {

/// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
[[nodiscard]] double binary_entropy(double x);

/// Network raw qubit rate R = M (1 - P0) <eta> / tau.
[[nodiscard]] double raw_rate(std::size_t user_pairs, double p0,
                              double mean_efficiency, unsigned layers);

/// Per-pair secret key rate
///   C = (1 - P0) <eta> / tau * [1 - H(1 - F')],
/// clamped at zero when the bracket is negative.
[[nodiscard]] double secret_key_rate(double p0, double mean_efficiency,
                                     unsigned layers,
                                     double purified_fidelity);

struct CellRates {
  double raw = 0.0;  ///< network raw rate R
  double key = 0.0;  ///< per-pair secret key rate C
};

/// R and C for one sweep cell, with the cell's mean purified fidelity as F'.
/// A cell where no pair was routed (P0 = 1, means undefined) yields zeros.
[[nodiscard]] CellRates cell_rates(std::size_t user_pairs, double p0,
                                   double mean_efficiency, double mean_fidelity,
                                   unsigned layers);

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Secret key rate sampled on a regular (efficiency-cost dB, fidelity) grid.
struct ContourGrid {
  std::vector<double> eff_db;    ///< row axis
  std::vector<double> fidelity;  ///< column axis
  std::vector<double> key_rate;  ///< row-major, eff_db.size() x fidelity.size()

  [[nodiscard]] double at(std::size_t row, std::size_t col) const {
    return key_rate[row * fidelity.size() + col];
  }
};

/// Evaluates secret_key_rate(p0, linear_from_db(cost), layers, F) on a
/// resolution x resolution grid spanning both ranges inclusively. The
/// fidelity range must lie within [0.5, 1] and the cost range within
/// [0, 40] dB.
[[nodiscard]] ContourGrid key_rate_contours(AxisRange eff_db,
                                            AxisRange fidelity,
                                            std::size_t resolution,
                                            double p0 = 0.0,
                                            unsigned layers = 1);

}  // namespace qnet
