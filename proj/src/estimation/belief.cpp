#include "hds/estimation/belief.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace hds::estimation {

namespace {

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool symmetric_psd(const Matrix& m) {
  return m.rows() == m.cols() && m.allFinite() &&
         (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance &&
         min_eigenvalue(m) >= -kPsdTolerance;
}

}  // namespace

std::string GaussianBelief::check_invariants() const {
  std::ostringstream os;
  if (covariance.rows() != mean.size() || covariance.cols() != mean.size()) {
    os << "covariance is " << covariance.rows() << "x" << covariance.cols() << " for a "
       << mean.size() << "-dimensional mean";
    return os.str();
  }
  if (!mean.allFinite() || !covariance.allFinite()) return "non-finite belief";
  if (mean.size() == 0) return {};
  const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    os << "covariance asymmetry " << asym;
    return os.str();
  }
  const double lo = min_eigenvalue(covariance);
  if (lo < -kPsdTolerance) {
    os << "covariance min eigenvalue " << lo;
    return os.str();
  }
  return {};
}

Matrix NoiseModel::process_noise(double h) const {
  if (q_period > 0.0) return Q * (h / q_period);
  return Q;
}

void NoiseModel::validate() const {
  if (Q.rows() != Q.cols()) throw ArgumentError("Q must be square");
  if (R.rows() != R.cols()) throw ArgumentError("R must be square");
  if (H.rows() != R.rows() || H.cols() != Q.rows())
    throw ArgumentError("H must be (measurement dim) x (state dim)");
  if (!symmetric_psd(Q)) throw ArgumentError("Q must be symmetric positive semidefinite");
  if (!symmetric_psd(R)) throw ArgumentError("R must be symmetric positive semidefinite");
  if (q_period < 0.0) throw ArgumentError("q_period must be >= 0");
}

}  // namespace hds::estimation
