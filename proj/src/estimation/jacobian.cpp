#include "hds/estimation/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hds::estimation {

Matrix numerical_jacobian(const std::function<Vector(const Vector&)>& map, const Vector& x) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Matrix jac;
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    const double hi = x[i] + h;
    const double lo = x[i] - h;
    probe[i] = hi;
    const Vector up = map(probe);
    probe[i] = lo;
    const Vector down = map(probe);
    probe[i] = x[i];
    if (!up.allFinite() || !down.allFinite())
      throw NumericalFailure("non-finite map evaluation in Jacobian column " + std::to_string(i), nan);
    if (i == 0) jac.resize(up.size(), x.size());
    jac.col(i) = (up - down) / (hi - lo);  // the step actually taken after rounding
  }
  return jac;
}

}  // namespace hds::estimation
