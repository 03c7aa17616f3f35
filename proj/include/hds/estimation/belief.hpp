#pragma once

#include "hds/core/types.hpp"

#include <string>

namespace hds::estimation {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

struct GaussianBelief {
  Vector mean;
  Matrix covariance;

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
  void symmetrize() { covariance = (0.5 * (covariance + covariance.transpose())).eval(); }

  /// Empty when the covariance is symmetric within 1e-12 and its smallest
  /// eigenvalue (after symmetrization) is >= -1e-10; otherwise the reason.
  std::string check_invariants() const;
};

/// Process noise Q, measurement noise R and linear measurement matrix H.
///
/// Q accumulates over `q_period` seconds: a prediction of length h adds
/// Q * h / q_period. With q_period == 0 every prediction call adds Q as is,
/// i.e. Q is a per-step covariance.
struct NoiseModel {
  Matrix Q;
  Matrix R;
  Matrix H;
  double q_period = 0.0;

  std::size_t state_dim() const { return static_cast<std::size_t>(Q.rows()); }
  std::size_t measurement_dim() const { return static_cast<std::size_t>(R.rows()); }
  Matrix process_noise(double h) const;
  void validate() const;
};

}  // namespace hds::estimation
