#pragma once

#include "hds/core/types.hpp"

#include <functional>

namespace hds::estimation {

/// Central-difference Jacobian with per-coordinate step 1e-6 * max(1, |x_i|).
/// Throws NumericalFailure when an evaluation is non-finite.
Matrix numerical_jacobian(const std::function<Vector(const Vector&)>& map, const Vector& x);

}  // namespace hds::estimation
