#pragma once

#include "hds/core/types.hpp"

#include <cstddef>

namespace hds {

/// Mixed logical dynamical system
///   x+ = A x + B1 u + B2 delta + B3 z
///   y  = C x + D1 u + D2 delta + D3 z
///   E2 delta + E3 z <= E1 u + E4 x + E5
/// with binary delta and real auxiliary z. Empty blocks are 0-sized matrices.
struct MldSystem {
  Matrix A, B1, B2, B3;
  Matrix C, D1, D2, D3;
  Matrix E1, E2, E3, E4;
  Vector E5;

  std::size_t nx() const { return static_cast<std::size_t>(A.rows()); }
  std::size_t nu() const { return static_cast<std::size_t>(B1.cols()); }
  std::size_t nd() const { return static_cast<std::size_t>(B2.cols()); }
  std::size_t nz() const { return static_cast<std::size_t>(B3.cols()); }
  std::size_t ny() const { return static_cast<std::size_t>(C.rows()); }
  std::size_t nc() const { return static_cast<std::size_t>(E5.size()); }

  /// Throws ArgumentError naming the first inconsistent block.
  void validate() const;

  /// All-zero system with the given dimensions.
  static MldSystem zeros(std::size_t nx, std::size_t nu, std::size_t nd, std::size_t nz,
                         std::size_t ny, std::size_t nc);
};

struct MldStep {
  Vector x_next;
  Vector y;
};

inline constexpr double kMldFeasibilityTolerance = 1e-9;

/// Checks the proposed (delta, z) against the inequality rows and, when
/// feasible, evaluates the state and output updates. Does not search for a
/// feasible (delta, z).
MldStep mld_step(const MldSystem& sys, const Vector& x, const Vector& u, const Vector& delta,
                 const Vector& z);

}  // namespace hds
