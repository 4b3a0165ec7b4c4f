#include "qnet/qkd.hpp"

#include "qnet/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qnet {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " +
                            std::to_string(x));
  }
}

void require_layers(unsigned layers) {
  if (layers < 1) {
    throw std::domain_error("layer count must be >= 1");
  }
}

}  // namespace

double binary_entropy(double x) {
  require_unit(x, "entropy argument");
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double raw_rate(std::size_t user_pairs, double p0, double mean_efficiency,
                unsigned layers) {
  require_unit(p0, "P0");
  require_unit(mean_efficiency, "mean efficiency");
  require_layers(layers);
  return static_cast<double>(user_pairs) * (1.0 - p0) * mean_efficiency /
         layers;
}

double secret_key_rate(double p0, double mean_efficiency, unsigned layers,
                       double purified_fidelity) {
  require_unit(p0, "P0");
  require_unit(mean_efficiency, "mean efficiency");
  require_layers(layers);
  if (!(purified_fidelity >= 0.5 && purified_fidelity <= 1.0)) {
    throw std::domain_error("purified fidelity must lie in [0.5, 1]");
  }
  const double bracket = 1.0 - binary_entropy(1.0 - purified_fidelity);
  return (1.0 - p0) * mean_efficiency / layers * std::max(0.0, bracket);
}

CellRates cell_rates(std::size_t user_pairs, double p0, double mean_efficiency,
                     double mean_fidelity, unsigned layers) {
  require_unit(p0, "P0");
  require_layers(layers);
  if (p0 == 1.0 || user_pairs == 0) {
    return {};
  }
  return {raw_rate(user_pairs, p0, mean_efficiency, layers),
          secret_key_rate(p0, mean_efficiency, layers, mean_fidelity)};
}

ContourGrid key_rate_contours(AxisRange eff_db, AxisRange fidelity,
                              std::size_t resolution, double p0,
                              unsigned layers) {
  if (resolution < 2) {
    throw std::invalid_argument("contour resolution must be >= 2");
  }
  if (!(eff_db.lo >= 0.0 && eff_db.hi <= 40.0 && eff_db.lo <= eff_db.hi)) {
    throw std::invalid_argument("efficiency-cost range must lie in [0, 40] dB");
  }
  if (!(fidelity.lo >= 0.5 && fidelity.hi <= 1.0 &&
        fidelity.lo <= fidelity.hi)) {
    throw std::invalid_argument("fidelity range must lie in [0.5, 1]");
  }
  auto axis = [resolution](AxisRange r) {
    std::vector<double> values(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
      values[i] = r.lo + (r.hi - r.lo) * static_cast<double>(i) /
                             static_cast<double>(resolution - 1);
    }
    return values;
  };
  ContourGrid grid{axis(eff_db), axis(fidelity), {}};
  grid.key_rate.reserve(resolution * resolution);
  for (double c : grid.eff_db) {
    const double eta = linear_from_db(c);
    for (double f : grid.fidelity) {
      grid.key_rate.push_back(secret_key_rate(p0, eta, layers, f));
    }
  }
  return grid;
}

}  // namespace qnet
