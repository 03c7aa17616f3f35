#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hds {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Point on a hybrid time domain: ordinary time plus the number of jumps so far.
struct HybridTime {
  double t = 0.0;
  std::size_t j = 0;

  friend auto operator<=>(const HybridTime&, const HybridTime&) = default;
};

bool all_finite(const Vector& x);
bool all_finite(const Matrix& m);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Non-finite state, derivative or matrix encountered at `time()`.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Two guards fired within one localization tolerance.
class AmbiguousTransition : public Error {
 public:
  AmbiguousTransition(std::string first, std::string second, double time);
  const std::string& first_edge() const noexcept { return first_; }
  const std::string& second_edge() const noexcept { return second_; }
  double time() const noexcept { return time_; }

 private:
  std::string first_;
  std::string second_;
  double time_;
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(std::vector<std::size_t> rows);
  /// Zero-based indices of the violated inequality rows.
  const std::vector<std::size_t>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::size_t> rows_;
};

class UncoveredStateError : public Error {
 public:
  explicit UncoveredStateError(const Vector& x);
  const Vector& state() const noexcept { return state_; }

 private:
  Vector state_;
};

/// Guard surface is (numerically) tangent to the pre-jump flow.
class GrazingError : public Error {
 public:
  GrazingError(double transversality, double time);
  double transversality() const noexcept { return transversality_; }

 private:
  double transversality_;
};

std::string format_vector(const Vector& x);

}  // namespace hds
