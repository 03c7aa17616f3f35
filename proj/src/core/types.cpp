#include "hds/core/types.hpp"

#include <cstdio>
#include <sstream>

namespace hds {

bool all_finite(const Vector& x) { return x.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

namespace {

std::string at_time(const std::string& what, double time) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), " (t = %.17g)", time);
  return what + buf;
}

std::string join_rows(const std::vector<std::size_t>& rows) {
  std::ostringstream os;
  os << "infeasible (delta, z): violated constraint rows";
  for (auto r : rows) os << ' ' << (r + 1);
  return os.str();
}

}  // namespace

NumericalFailure::NumericalFailure(const std::string& what, double time)
    : Error(at_time("numerical failure: " + what, time)), time_(time) {}

AmbiguousTransition::AmbiguousTransition(std::string first, std::string second, double time)
    : Error(at_time("ambiguous transition: edges '" + first + "' and '" + second +
                        "' enabled simultaneously",
                    time)),
      first_(std::move(first)),
      second_(std::move(second)),
      time_(time) {}

InfeasibleError::InfeasibleError(std::vector<std::size_t> rows)
    : Error(join_rows(rows)), rows_(std::move(rows)) {}

UncoveredStateError::UncoveredStateError(const Vector& x)
    : Error("state " + format_vector(x) + " lies in no region"), state_(x) {}

GrazingError::GrazingError(double transversality, double time)
    : Error(at_time("grazing guard contact, grad(g).f = " + std::to_string(transversality), time)),
      transversality_(transversality) {}

std::string format_vector(const Vector& x) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
    os << buf;
  }
  os << ']';
  return os.str();
}

}  // namespace hds
