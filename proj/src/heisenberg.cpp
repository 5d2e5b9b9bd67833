#include "spincorr/heisenberg.hpp"

#include <algorithm>
#include <cmath>

#include "spincorr/error.hpp"

namespace spincorr::heisenberg {

namespace {

void check_coupling(double coupling) {
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw Error(ErrorKind::DomainError, "Heisenberg coupling must be > 0 (antiferromagnetic)");
}

}  // namespace

void HeisenbergParams::validate() const {
  check_coupling(coupling);
  if (!std::isfinite(field)) throw Error(ErrorKind::DomainError, "field must be finite");
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw Error(ErrorKind::DomainError, "temperature must be finite and >= 0");
}

Mat4 hamiltonian(double coupling, double field) {
  check_coupling(coupling);
  const double j = coupling;
  const double b = field;
  Mat4 h = Mat4::Zero();
  h(0, 0) = 2 * j + 2 * b;
  h(1, 1) = -2 * j;
  h(2, 2) = -2 * j;
  h(3, 3) = 2 * j - 2 * b;
  h(1, 2) = 4 * j;
  h(2, 1) = 4 * j;
  return h;
}

DensityMatrix thermal_state(const HeisenbergParams& p) {
  p.validate();
  if (p.temperature == 0.0) return ground_state(p.coupling, p.field);
  const double w = p.w();
  const double y = p.y();
  // Exponents of e_wmy, the two parts of e_wp / e_wm, and e_wpy.
  const double x00 = -2 * w - 2 * y;
  const double xt = -2 * w;
  const double xs = 6 * w;
  const double x11 = -2 * w + 2 * y;
  const double top = std::max({x00, xt, xs, x11});
  const double e_wmy = std::exp(x00 - top);
  const double e_wp = std::exp(xt - top) + std::exp(xs - top);
  const double e_wm = std::exp(xt - top) - std::exp(xs - top);
  const double e_wpy = std::exp(x11 - top);
  const double z = e_wmy + e_wp + e_wpy;
  Mat4 m = Mat4::Zero();
  m(0, 0) = e_wmy;
  m(1, 1) = e_wp / 2;
  m(2, 2) = e_wp / 2;
  m(1, 2) = e_wm / 2;
  m(2, 1) = e_wm / 2;
  m(3, 3) = e_wpy;
  return DensityMatrix(m / z);
}

DensityMatrix thermal_state_spectral(const HeisenbergParams& p) {
  p.validate();
  if (p.temperature == 0.0) return ground_state(p.coupling, p.field);
  const Spectrum s = eig_hermitian(hamiltonian(p.coupling, p.field));
  const double e_min = s.values[3];
  Eigen::Vector4d weight;
  for (int k = 0; k < 4; ++k) weight(k) = std::exp(-(s.values[k] - e_min) / p.temperature);
  Mat4 rho = s.vectors * weight.asDiagonal() * s.vectors.adjoint() / weight.sum();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

double concurrence_closed(const HeisenbergParams& p) {
  p.validate();
  if (p.temperature <= 0.0) throw Error(ErrorKind::DomainError, "closed-form concurrence needs T > 0");
  if (p.temperature >= critical_points(p.coupling).temperature) return 0.0;
  const double w = p.w();
  const double y = p.y();
  const double top = std::max({8 * w, 2 * y, -2 * y, 0.0});
  const double num = std::exp(8 * w - top) - 3 * std::exp(-top);
  const double den = std::exp(-top) + std::exp(-2 * y - top) + std::exp(2 * y - top) + std::exp(8 * w - top);
  return num / den;
}

CriticalPoints critical_points(double coupling) {
  check_coupling(coupling);
  return {8 * coupling / std::log(3.0), 4 * coupling};
}

DensityMatrix ground_state(double coupling, double field) {
  check_coupling(coupling);
  const double j = coupling;
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<double, 4> level{2 * j + 2 * field, 2 * j, -6 * j, 2 * j - 2 * field};
  std::array<Eigen::Vector4cd, 4> state;
  state[0] << 1, 0, 0, 0;
  state[1] << 0, r, r, 0;
  state[2] << 0, r, -r, 0;
  state[3] << 0, 0, 0, 1;
  const double e0 = *std::min_element(level.begin(), level.end());
  const double tol = 1e-12 * j;
  Mat4 rho = Mat4::Zero();
  int count = 0;
  for (int k = 0; k < 4; ++k) {
    if (level[k] - e0 <= tol) {
      rho += state[k] * state[k].adjoint();
      ++count;
    }
  }
  return DensityMatrix(rho / count);
}

}  // namespace spincorr::heisenberg
