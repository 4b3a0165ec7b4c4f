#include "qnet/cost_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnet {

namespace {

void check_component(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::domain_error(std::string("cost component ") + name +
                            " must be finite and non-negative, got " +
                            std::to_string(value));
  }
}

}  // namespace

CostVector::CostVector(double loss_db, double z_db)
    : loss_db_(loss_db), z_db_(z_db) {
  check_component(loss_db, "loss_db");
  check_component(z_db, "z_db");
}

CostVector& CostVector::operator+=(const CostVector& other) {
  loss_db_ += other.loss_db_;
  z_db_ += other.z_db_;
  return *this;
}

CostVector operator*(double factor, const CostVector& cost) {
  return {factor * cost.loss_db(), factor * cost.z_db()};
}

double scalarize(const CostVector& cost, Scalarization mode) {
  switch (mode) {
  case Scalarization::Sum:
    return cost.loss_db() + cost.z_db();
  case Scalarization::LossOnly:
    return cost.loss_db();
  case Scalarization::DephasingOnly:
    return cost.z_db();
  }
  throw std::invalid_argument("unknown scalarization");
}

double db_from_linear(double x) {
  if (!(x > 0.0) || x > 1.0) {
    throw std::domain_error("db_from_linear expects x in (0, 1], got " +
                            std::to_string(x));
  }
  return -10.0 * std::log10(x);
}

double linear_from_db(double c) {
  if (!std::isfinite(c) || c < 0.0) {
    throw std::domain_error("linear_from_db expects finite c >= 0, got " +
                            std::to_string(c));
  }
  return std::pow(10.0, -c / 10.0);
}

CostVector accumulate(std::span<const CostVector> costs) {
  CostVector total;
  for (const auto& c : costs) {
    total += c;
  }
  return total;
}

PathMetrics metrics_from_cost(const CostVector& cost) {
  return {linear_from_db(cost.loss_db()),
          0.5 * (1.0 + linear_from_db(cost.z_db()))};
}

CostVector cost_from_metrics(const PathMetrics& metrics) {
  if (!(metrics.efficiency > 0.0) || metrics.efficiency > 1.0) {
    throw std::domain_error("efficiency must lie in (0, 1]");
  }
  if (!(metrics.fidelity > 0.5) || metrics.fidelity > 1.0) {
    throw std::domain_error("fidelity must lie in (0.5, 1]");
  }
  // Round-off can push -10 log10(1) to -0.0.
  return {std::abs(db_from_linear(metrics.efficiency)),
          std::abs(db_from_linear(2.0 * metrics.fidelity - 1.0))};
}

}  // namespace qnet
