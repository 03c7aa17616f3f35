#pragma once

#include "hds/core/hybrid_system.hpp"
#include "hds/core/integrator.hpp"
#include "hds/estimation/belief.hpp"

#include <string>

namespace hds::estimation {

/// Prediction over [t, t + dt]: the mean takes one RK4 step, F is the
/// numerical Jacobian of that one-step map at the prior mean, and
/// P <- F P F^T + noise.process_noise(dt), symmetrized.
GaussianBelief ekf_predict(const GaussianBelief& belief, const VectorField& flow, double t, double dt,
                           const NoiseModel& noise);

/// Correction with z = H x + v:
///   K = P H^T (H P H^T + R)^-1,  x <- x + K (z - H x),  P <- (I - K H) P.
/// Throws NumericalFailure when the innovation covariance is singular.
GaussianBelief ekf_update(const GaussianBelief& belief, const Vector& z, const NoiseModel& noise);

struct SaltationMatrix {
  Matrix matrix;
  double jump_time = 0.0;
  std::string edge;
};

inline constexpr double kGuardSurfaceTolerance = 1e-6;
inline constexpr double kGrazingTolerance = 1e-12;

/// First-order map of perturbations across a jump,
///   Xi = DR + (f_post(R(x)) - DR f_pre(x)) grad^T / (grad . f_pre(x)),
/// or exactly DR when the guard gradient is identically zero (guards driven
/// only by time or exogenous inputs). DR comes from the reset's analytic
/// Jacobian when present, otherwise numerical_jacobian. Throws GrazingError
/// when |grad . f_pre| < 1e-12 for a non-zero gradient.
SaltationMatrix saltation_matrix(const Reset& reset, const VectorField& f_pre,
                                 const VectorField& f_post, const Vector& guard_gradient,
                                 const Vector& x_minus, double t, std::string edge = {});

/// Same, for an automaton edge: checks that x_minus is on the guard surface
/// (|margin| <= 1e-6, or inside the jump set) and takes the gradient from the guard.
SaltationMatrix saltation_matrix(const Edge& edge, const VectorField& f_pre,
                                 const VectorField& f_post, const Vector& x_minus, double t);

/// mean <- R(mean), P <- Xi P Xi^T (symmetrized).
GaussianBelief propagate_belief_through_jump(const GaussianBelief& belief, const Reset& reset,
                                             const SaltationMatrix& saltation);

}  // namespace hds::estimation
