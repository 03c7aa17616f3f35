#pragma once

#include "hds/core/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hds {

/// Polyhedral region {x : P x + q <= 0}.
struct PwaRegion {
  Matrix P;
  Vector q;

  bool contains(const Vector& x) const;
};

/// Affine update x+ = A x + B u + c.
struct AffineDynamics {
  Matrix A;
  Matrix B;
  Vector c;
};

class PwaSystem {
 public:
  PwaSystem(std::vector<PwaRegion> regions, std::vector<AffineDynamics> dynamics);

  std::size_t state_dim() const noexcept { return nx_; }
  std::size_t input_dim() const noexcept { return nu_; }
  std::size_t size() const noexcept { return regions_.size(); }
  const PwaRegion& region(std::size_t i) const { return regions_.at(i); }

  /// Lowest-index region containing x.
  std::optional<std::size_t> region_of(const Vector& x) const;
  std::vector<std::size_t> regions_containing(const Vector& x) const;

  /// Applies the dynamics of region_of(x); throws UncoveredStateError when x
  /// lies in no region.
  Vector step(const Vector& x, const Vector& u) const;

 private:
  std::vector<PwaRegion> regions_;
  std::vector<AffineDynamics> dynamics_;
  std::size_t nx_ = 0;
  std::size_t nu_ = 0;
};

inline Vector pwa_step(const PwaSystem& sys, const Vector& x, const Vector& u) {
  return sys.step(x, u);
}

}  // namespace hds
