#pragma once

#include "qnet/cost_model.hpp"
#include "qnet/routing_graph.hpp"

#include <span>

namespace qnet {

/// Probability that one purification round keeps the pair:
/// Fa*Fb + (1 - Fa)(1 - Fb).
[[nodiscard]] double purification_success(double fa, double fb);

/// The bare fidelity map Fa*Fb / (Fa*Fb + (1 - Fa)(1 - Fb)) on [0, 1]^2.
/// Fixes 0.5 and 1. Throws std::domain_error outside [0, 1] or when the
/// denominator vanishes (one perfect pair against one orthogonal pair).
[[nodiscard]] double purified_fidelity(double fa, double fb);

/// One purification round on two pairs.
///
///   F' = Fa*Fb / (Fa*Fb + (1 - Fa)(1 - Fb))
///   eta' = eta_a * eta_b * p_s
///
/// Throws std::domain_error unless both fidelities exceed 0.5.
[[nodiscard]] PathMetrics purify_two(const PathMetrics& a,
                                     const PathMetrics& b);

/// Folds pairs into one: non-viable inputs (F <= 0.5) are dropped, the rest
/// are sorted by fidelity (descending) and left-folded with purify_two.
/// A single survivor is returned unchanged. Throws std::domain_error when
/// nothing survives.
[[nodiscard]] PathMetrics purify_metrics(std::span<const PathMetrics> pairs);

/// purify_metrics over the metrics of each route's accumulated cost.
[[nodiscard]] PathMetrics purify_routes(std::span<const Route> routes);

}  // namespace qnet
