#pragma once

#include "hds/core/types.hpp"

#include <cstdint>
#include <random>

namespace hds {

/// Seeded stream over std::mt19937_64. Uniform and Gaussian draws are built
/// from raw 64-bit outputs (53-bit mantissas, Box-Muller), so a seed gives
/// the same numbers on every conforming standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian();
  Vector gaussian_vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hds
