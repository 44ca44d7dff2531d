#include "crw/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crw {

ModelParams::ModelParams(double S) : S_(S) {
  if (!std::isfinite(S) || !(S > 0.0)) {
    throw std::invalid_argument("ModelParams: S must be finite and > 0, got " + std::to_string(S));
  }
}

ModelParams ModelParams::from_dimensional(double gamma, double mu, double length) {
  for (double value : {gamma, mu, length}) {
    if (!std::isfinite(value) || !(value > 0.0)) {
      throw std::invalid_argument("ModelParams: gamma, mu and L must be finite and > 0");
    }
  }
  ModelParams params(gamma / (mu * length));
  params.dimensional_ = DimensionalParams{gamma, mu, length};
  return params;
}

}  // namespace crw
