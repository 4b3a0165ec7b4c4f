#include "qnet/entanglement.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qnet {

double purification_success(double fa, double fb) {
  return fa * fb + (1.0 - fa) * (1.0 - fb);
}

double purified_fidelity(double fa, double fb) {
  if (!(fa >= 0.0 && fa <= 1.0 && fb >= 0.0 && fb <= 1.0)) {
    throw std::domain_error("fidelities must lie in [0, 1]");
  }
  const double success = purification_success(fa, fb);
  if (success == 0.0) {
    throw std::domain_error("purification of orthogonal pairs never succeeds");
  }
  return fa * fb / success;
}

PathMetrics purify_two(const PathMetrics& a, const PathMetrics& b) {
  if (!a.viable() || !b.viable()) {
    throw std::domain_error("purification needs both fidelities > 0.5");
  }
  const double success = purification_success(a.fidelity, b.fidelity);
  return {a.efficiency * b.efficiency * success,
          purified_fidelity(a.fidelity, b.fidelity)};
}

PathMetrics purify_metrics(std::span<const PathMetrics> pairs) {
  std::vector<PathMetrics> usable;
  usable.reserve(pairs.size());
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(usable),
               [](const PathMetrics& m) { return m.viable(); });
  if (usable.empty()) {
    throw std::domain_error("no pair with fidelity > 0.5 to purify");
  }
  std::stable_sort(usable.begin(), usable.end(),
                   [](const PathMetrics& x, const PathMetrics& y) {
                     return x.fidelity > y.fidelity;
                   });
  PathMetrics result = usable.front();
  for (std::size_t i = 1; i < usable.size(); ++i) {
    result = purify_two(result, usable[i]);
  }
  return result;
}

PathMetrics purify_routes(std::span<const Route> routes) {
  std::vector<PathMetrics> metrics;
  metrics.reserve(routes.size());
  for (const auto& r : routes) {
    metrics.push_back(metrics_from_cost(r.total_cost));
  }
  return purify_metrics(metrics);
}

}  // namespace qnet
