#include "hds/core/mld.hpp"

#include <string>
#include <vector>

namespace hds {

namespace {

void expect(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols)
    throw ArgumentError(std::string("MLD block ") + name + " is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                        std::to_string(cols));
}

}  // namespace

void MldSystem::validate() const {
  const auto n = nx(), m = nu(), d = nd(), a = nz(), p = ny(), c = nc();
  expect(A, n, n, "A");
  expect(B1, n, m, "B1");
  expect(B2, n, d, "B2");
  expect(B3, n, a, "B3");
  expect(C, p, n, "C");
  expect(D1, p, m, "D1");
  expect(D2, p, d, "D2");
  expect(D3, p, a, "D3");
  expect(E1, c, m, "E1");
  expect(E2, c, d, "E2");
  expect(E3, c, a, "E3");
  expect(E4, c, n, "E4");
}

MldSystem MldSystem::zeros(std::size_t nx, std::size_t nu, std::size_t nd, std::size_t nz,
                           std::size_t ny, std::size_t nc) {
  const auto Z = [](std::size_t r, std::size_t c) {
    return Matrix::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)).eval();
  };
  MldSystem s;
  s.A = Z(nx, nx);
  s.B1 = Z(nx, nu);
  s.B2 = Z(nx, nd);
  s.B3 = Z(nx, nz);
  s.C = Z(ny, nx);
  s.D1 = Z(ny, nu);
  s.D2 = Z(ny, nd);
  s.D3 = Z(ny, nz);
  s.E1 = Z(nc, nu);
  s.E2 = Z(nc, nd);
  s.E3 = Z(nc, nz);
  s.E4 = Z(nc, nx);
  s.E5 = Vector::Zero(static_cast<Eigen::Index>(nc));
  return s;
}

MldStep mld_step(const MldSystem& sys, const Vector& x, const Vector& u, const Vector& delta,
                 const Vector& z) {
  sys.validate();
  if (static_cast<std::size_t>(x.size()) != sys.nx() ||
      static_cast<std::size_t>(u.size()) != sys.nu() ||
      static_cast<std::size_t>(delta.size()) != sys.nd() ||
      static_cast<std::size_t>(z.size()) != sys.nz())
    throw ArgumentError("MLD step: x/u/delta/z dimensions do not match the system");
  for (Eigen::Index i = 0; i < delta.size(); ++i)
    if (delta[i] != 0.0 && delta[i] != 1.0)
      throw ArgumentError("delta[" + std::to_string(i) + "] = " + std::to_string(delta[i]) +
                          " is not binary");

  const Vector lhs = sys.E2 * delta + sys.E3 * z;
  const Vector rhs = sys.E1 * u + sys.E4 * x + sys.E5;
  std::vector<std::size_t> violated;
  for (Eigen::Index r = 0; r < lhs.size(); ++r)
    if (!(lhs[r] <= rhs[r] + kMldFeasibilityTolerance)) violated.push_back(static_cast<std::size_t>(r));
  if (!violated.empty()) throw InfeasibleError(std::move(violated));

  return {sys.A * x + sys.B1 * u + sys.B2 * delta + sys.B3 * z,
          sys.C * x + sys.D1 * u + sys.D2 * delta + sys.D3 * z};
}

}  // namespace hds
