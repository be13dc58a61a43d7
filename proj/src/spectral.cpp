#include "hsqed/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace hsqed::spectral {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw std::invalid_argument("quad.abs_tol must be positive");
  }
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw std::invalid_argument("quad.rel_tol must be positive");
  }
  if (acceleration_order < 1) {
    throw std::invalid_argument("quad.accel_order must be >= 1");
  }
  if (max_oscillation_periods <= acceleration_order + 1) {
    throw std::invalid_argument(
        "quad.max_periods must exceed quad.accel_order + 1");
  }
  if (!(damped_truncation_decades > 0.0) ||
      !std::isfinite(damped_truncation_decades)) {
    throw std::invalid_argument("quad.trunc_decades must be positive");
  }
}

}  // namespace hsqed::spectral
