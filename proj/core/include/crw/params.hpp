#pragma once

#include <optional>

namespace crw {

/// Dimensional description of the walk: speed gamma, turning rate mu, domain length L.
struct DimensionalParams {
  double gamma{0.0};
  double mu{0.0};
  double length{0.0};
};

/// Nondimensional speed S = gamma / (mu L). All spectral and simulation
/// routines depend on the model only through S.
class ModelParams {
 public:
  /// Throws std::invalid_argument unless S is finite and positive.
  explicit ModelParams(double S);

  static ModelParams from_dimensional(double gamma, double mu, double length);

  double S() const { return S_; }
  const std::optional<DimensionalParams>& dimensional() const { return dimensional_; }

 private:
  double S_;
  std::optional<DimensionalParams> dimensional_;
};

}  // namespace crw
