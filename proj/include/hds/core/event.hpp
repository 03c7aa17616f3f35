#pragma once

#include <functional>
#include <optional>

namespace hds {

/// Localization tolerance on event times, in seconds.
inline constexpr double kEventTolerance = 1e-9;

/// Signed guard margin along a step: negative means not triggered.
using MarginFunction = std::function<double(double t)>;

/// Finds the time in (t_lo, t_hi] where `margin` changes sign.
///
/// Bisection shrinks the bracket to at most `tolerance`, then one secant step
/// inside the final bracket refines the estimate; the secant point is kept
/// only if it lies on the same side as t_hi. The returned time always carries
/// the sign of margin(t_hi), so for a rising margin the state there is inside
/// the jump set. Returns nullopt when the endpoint signs agree.
std::optional<double> locate_event(const MarginFunction& margin, double t_lo, double t_hi,
                                   double tolerance = kEventTolerance);

}  // namespace hds
