#include "hds/estimation/ekf.hpp"

#include "hds/estimation/jacobian.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace hds::estimation {

namespace {

void check_belief(const GaussianBelief& b) {
  const auto n = b.mean.size();
  if (b.covariance.rows() != n || b.covariance.cols() != n)
    throw ArgumentError("belief covariance does not match the mean dimension");
}

}  // namespace

GaussianBelief ekf_predict(const GaussianBelief& belief, const VectorField& flow, double t, double dt,
                           const NoiseModel& noise) {
  check_belief(belief);
  if (!(dt > 0.0)) throw ArgumentError("prediction step must be positive");
  if (noise.Q.rows() != belief.mean.size()) throw ArgumentError("Q does not match the state dimension");

  const auto transition = [&](const Vector& x) { return rk4_step(flow, x, t, dt); };
  GaussianBelief out;
  out.mean = transition(belief.mean);
  if (!out.mean.allFinite()) throw NumericalFailure("non-finite predicted mean", t + dt);
  const Matrix F = numerical_jacobian(transition, belief.mean);
  out.covariance = F * belief.covariance * F.transpose() + noise.process_noise(dt);
  out.symmetrize();
  if (!out.covariance.allFinite()) throw NumericalFailure("non-finite predicted covariance", t + dt);
  return out;
}

GaussianBelief ekf_update(const GaussianBelief& belief, const Vector& z, const NoiseModel& noise) {
  check_belief(belief);
  const Matrix& H = noise.H;
  if (H.cols() != belief.mean.size() || H.rows() != z.size() || noise.R.rows() != z.size())
    throw ArgumentError("measurement dimensions do not match H and R");

  const Matrix PHt = belief.covariance * H.transpose();
  const Matrix S = H * PHt + noise.R;
  const Eigen::FullPivLU<Matrix> lu(S);
  if (!lu.isInvertible())
    throw NumericalFailure("singular innovation covariance", std::numeric_limits<double>::quiet_NaN());
  const Matrix K = lu.solve(PHt.transpose()).transpose();

  GaussianBelief out;
  out.mean = belief.mean + K * (z - H * belief.mean);
  const auto n = belief.mean.size();
  out.covariance = (Matrix::Identity(n, n) - K * H) * belief.covariance;
  out.symmetrize();
  if (!out.mean.allFinite() || !out.covariance.allFinite())
    throw NumericalFailure("non-finite corrected belief", std::numeric_limits<double>::quiet_NaN());
  return out;
}

SaltationMatrix saltation_matrix(const Reset& reset, const VectorField& f_pre,
                                 const VectorField& f_post, const Vector& guard_gradient,
                                 const Vector& x_minus, double t, std::string edge) {
  if (guard_gradient.size() != x_minus.size())
    throw ArgumentError("guard gradient does not match the state dimension");
  Matrix DR = reset.jacobian ? reset.jacobian(x_minus) : numerical_jacobian(reset.map, x_minus);
  if (!DR.allFinite()) throw NumericalFailure("non-finite reset Jacobian", t);

  SaltationMatrix out{std::move(DR), t, std::move(edge)};
  if ((guard_gradient.array() == 0.0).all()) return out;

  const Vector pre = f_pre(x_minus, t);
  const double transversality = guard_gradient.dot(pre);
  if (!std::isfinite(transversality) || std::abs(transversality) < kGrazingTolerance)
    throw GrazingError(transversality, t);
  const Vector post = f_post(reset(x_minus), t);
  out.matrix += (post - out.matrix * pre) * guard_gradient.transpose() / transversality;
  if (!out.matrix.allFinite()) throw NumericalFailure("non-finite saltation matrix", t);
  return out;
}

SaltationMatrix saltation_matrix(const Edge& edge, const VectorField& f_pre,
                                 const VectorField& f_post, const Vector& x_minus, double t) {
  const double margin = edge.guard.margin(x_minus, t);
  if (!(margin >= -kGuardSurfaceTolerance))
    throw ArgumentError("state is not on the guard surface of edge '" + edge.label + "'");
  return saltation_matrix(edge.reset, f_pre, f_post, edge.guard.state_gradient(x_minus, t), x_minus,
                          t, edge.label);
}

GaussianBelief propagate_belief_through_jump(const GaussianBelief& belief, const Reset& reset,
                                             const SaltationMatrix& saltation) {
  check_belief(belief);
  const auto n = belief.mean.size();
  if (saltation.matrix.rows() != n || saltation.matrix.cols() != n)
    throw ArgumentError("saltation matrix does not match the state dimension");
  GaussianBelief out;
  out.mean = reset(belief.mean);
  if (out.mean.size() != n) throw ArgumentError("reset changes the state dimension");
  out.covariance = saltation.matrix * belief.covariance * saltation.matrix.transpose();
  out.symmetrize();
  return out;
}

}  // namespace hds::estimation
