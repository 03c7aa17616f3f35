#include "hds/core/pwa.hpp"

#include <string>

namespace hds {

bool PwaRegion::contains(const Vector& x) const {
  return ((P * x + q).array() <= 0.0).all();
}

PwaSystem::PwaSystem(std::vector<PwaRegion> regions, std::vector<AffineDynamics> dynamics)
    : regions_(std::move(regions)), dynamics_(std::move(dynamics)) {
  if (regions_.empty()) throw ArgumentError("PWA system needs at least one region");
  if (regions_.size() != dynamics_.size())
    throw ArgumentError("PWA system has " + std::to_string(regions_.size()) + " regions but " +
                        std::to_string(dynamics_.size()) + " affine dynamics");
  nx_ = static_cast<std::size_t>(dynamics_.front().A.rows());
  nu_ = static_cast<std::size_t>(dynamics_.front().B.cols());
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const auto& r = regions_[i];
    const auto& d = dynamics_[i];
    const auto where = " in region " + std::to_string(i);
    if (static_cast<std::size_t>(r.P.cols()) != nx_ || r.P.rows() != r.q.size())
      throw ArgumentError("inconsistent P/q dimensions" + where);
    if (static_cast<std::size_t>(d.A.rows()) != nx_ || static_cast<std::size_t>(d.A.cols()) != nx_)
      throw ArgumentError("A must be square and match the state dimension" + where);
    if (static_cast<std::size_t>(d.B.rows()) != nx_ || static_cast<std::size_t>(d.B.cols()) != nu_)
      throw ArgumentError("inconsistent B dimensions" + where);
    if (static_cast<std::size_t>(d.c.size()) != nx_)
      throw ArgumentError("inconsistent c dimension" + where);
  }
}

std::optional<std::size_t> PwaSystem::region_of(const Vector& x) const {
  for (std::size_t i = 0; i < regions_.size(); ++i)
    if (regions_[i].contains(x)) return i;
  return std::nullopt;
}

std::vector<std::size_t> PwaSystem::regions_containing(const Vector& x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < regions_.size(); ++i)
    if (regions_[i].contains(x)) out.push_back(i);
  return out;
}

Vector PwaSystem::step(const Vector& x, const Vector& u) const {
  if (static_cast<std::size_t>(x.size()) != nx_ || static_cast<std::size_t>(u.size()) != nu_)
    throw ArgumentError("PWA step: state/input dimension mismatch");
  const auto i = region_of(x);
  if (!i) throw UncoveredStateError(x);
  const auto& d = dynamics_[*i];
  return d.A * x + d.B * u + d.c;
}

}  // namespace hds
