#include "hds/core/event.hpp"

#include "hds/core/types.hpp"

#include <cmath>

namespace hds {

namespace {

bool triggered(double m) { return m >= 0.0; }

}  // namespace

std::optional<double> locate_event(const MarginFunction& margin, double t_lo, double t_hi,
                                   double tolerance) {
  if (!(t_hi > t_lo)) throw ArgumentError("locate_event requires t_hi > t_lo");
  if (!(tolerance > 0.0)) throw ArgumentError("locate_event tolerance must be positive");

  double a = t_lo;
  double b = t_hi;
  double ma = margin(a);
  double mb = margin(b);
  if (!std::isfinite(ma) || !std::isfinite(mb))
    throw NumericalFailure("non-finite guard margin", std::isfinite(ma) ? b : a);
  const bool side_b = triggered(mb);
  if (triggered(ma) == side_b) return std::nullopt;

  while (b - a > tolerance) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const double mm = margin(mid);
    if (!std::isfinite(mm)) throw NumericalFailure("non-finite guard margin", mid);
    if (triggered(mm) == side_b) {
      b = mid;
      mb = mm;
    } else {
      a = mid;
      ma = mm;
    }
  }

  // Secant polish; exact for margins linear in t.
  if (mb != ma) {
    double ts = a - ma * (b - a) / (mb - ma);
    if (ts > a && ts <= b) {
      for (int nudge = 0; nudge < 2 && ts <= b; ++nudge) {
        if (triggered(margin(ts)) == side_b) return ts;
        ts = std::nextafter(ts, b);
      }
    }
  }
  return b;
}

}  // namespace hds
