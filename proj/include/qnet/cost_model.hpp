#pragma once

#include <span>

namespace qnet {

/// Additive decoherence cost of an edge or a path, in decibels.
///
/// Loss and dephasing both compose multiplicatively on the physical side
/// (transmissivities and coherence factors multiply), so their logarithms
/// compose additively and classical shortest-path machinery applies.
/// Components are always finite and non-negative; the constructor throws
/// std::domain_error otherwise.
class CostVector {
public:
  constexpr CostVector() = default;
  CostVector(double loss_db, double z_db);

  [[nodiscard]] double loss_db() const { return loss_db_; }
  [[nodiscard]] double z_db() const { return z_db_; }

  CostVector& operator+=(const CostVector& other);
  friend CostVector operator+(CostVector lhs, const CostVector& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend bool operator==(const CostVector&, const CostVector&) = default;

private:
  double loss_db_ = 0.0;
  double z_db_ = 0.0;
};

/// Component-wise scaling, e.g. distance_km * cost_per_km.
CostVector operator*(double factor, const CostVector& cost);

/// Efficiency (net transmissivity) and Bell-pair fidelity of a delivered pair.
struct PathMetrics {
  double efficiency = 1.0;
  double fidelity = 1.0;

  /// Usable for purification: fidelity strictly above the separable bound.
  [[nodiscard]] bool viable() const { return fidelity > 0.5; }

  friend bool operator==(const PathMetrics&, const PathMetrics&) = default;
};

/// How a CostVector is collapsed to the scalar weight used by shortest-path
/// search.
enum class Scalarization { Sum, LossOnly, DephasingOnly };

[[nodiscard]] double scalarize(const CostVector& cost, Scalarization mode);

/// -10 log10(x) for x in (0, 1].
[[nodiscard]] double db_from_linear(double x);
/// 10^(-c/10) for finite c >= 0.
[[nodiscard]] double linear_from_db(double c);

[[nodiscard]] CostVector accumulate(std::span<const CostVector> costs);

/// efficiency = 10^(-loss/10), fidelity = (1 + 10^(-z/10)) / 2.
///
/// A single dephasing channel with coherence factor (2p - 1) leaves |phi+>
/// with fidelity p, so the accumulated coherence factor 10^(-z/10) maps to
/// 2F - 1.
[[nodiscard]] PathMetrics metrics_from_cost(const CostVector& cost);
[[nodiscard]] CostVector cost_from_metrics(const PathMetrics& metrics);

}  // namespace qnet
