#include "spincorr/xy_correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spincorr/error.hpp"
#include "spincorr/quadrature.hpp"

namespace spincorr::xy {

namespace {

constexpr double kPi = std::numbers::pi;

// tanh(Lambda / 2T) / Lambda, with the T == 0 tag meaning 1 / Lambda.
double thermal_weight(double lambda, double temperature) {
  if (temperature == 0.0) return lambda > 0.0 ? 1.0 / lambda : 0.0;
  if (lambda == 0.0) return 0.5 / temperature;
  return std::tanh(0.5 * lambda / temperature) / lambda;
}

// Panel edges on [0, pi]: uniform pieces (about two oscillation periods of
// cos(r_max phi) each) plus arccos(h) for every field inside (-1, 1), where
// Lambda can nearly vanish.
std::vector<double> breakpoints(int r_max, std::initializer_list<double> fields) {
  const int pieces = std::max(1, r_max / 4 + 1);
  std::vector<double> b;
  b.reserve(pieces + 1 + fields.size());
  for (int i = 0; i <= pieces; ++i) b.push_back(kPi * i / pieces);
  for (double h : fields)
    if (h > -1.0 && h < 1.0) b.push_back(std::acos(h));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

void check_temperature(double temperature) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw Error(ErrorKind::DomainError, "temperature must be finite and >= 0");
}

Mat4 bell_frame() {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  Mat4 u = Mat4::Zero();
  // Columns: Phi+, i Phi-, i Psi+, Psi-  (basis index 2a + b).
  u(0, 0) = s;
  u(3, 0) = s;
  u(0, 1) = i * s;
  u(3, 1) = -i * s;
  u(1, 2) = i * s;
  u(2, 2) = i * s;
  u(1, 3) = s;
  u(2, 3) = -s;
  return u;
}

}  // namespace

Separation Separation::finite(int r) {
  if (r < 1) throw Error(ErrorKind::DomainError, "separation must be >= 1");
  return Separation(r);
}

int Separation::value() const {
  if (is_infinite()) throw Error(ErrorKind::DomainError, "infinite separation has no finite value");
  return r_;
}

std::string Separation::to_string() const { return is_infinite() ? "inf" : std::to_string(r_); }

Separation Separation::parse(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinite") return infinite();
  std::size_t used = 0;
  int r = 0;
  try {
    r = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::UsageError, "separation must be an integer or 'inf', got '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorKind::UsageError, "trailing characters in separation '" + text + "'");
  return finite(r);
}

XYParams XYParams::equilibrium_at(double gamma, double h, double temperature, Separation r) {
  XYParams p;
  p.gamma = gamma;
  p.h0 = h;
  p.hf = h;
  p.time = 0.0;
  p.temperature = temperature;
  p.separation = r;
  p.validate();
  return p;
}

void XYParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorKind::DomainError, "gamma must lie in [0, 1]");
  if (!std::isfinite(h0) || !std::isfinite(hf)) throw Error(ErrorKind::DomainError, "field must be finite");
  if (!(time >= 0.0) || !std::isfinite(time)) throw Error(ErrorKind::DomainError, "time must be >= 0");
  check_temperature(temperature);
}

double dispersion(double phi, double h, double gamma) {
  const double s = gamma * std::sin(phi);
  const double d = h - std::cos(phi);
  return std::sqrt(s * s + d * d);
}

double g_equilibrium(int r, double h, double gamma, double temperature) {
  check_temperature(temperature);
  const auto b = breakpoints(std::abs(r), {h});
  const double value = quad::integrate(
      [&](double phi) {
        const double w = thermal_weight(dispersion(phi, h, gamma), temperature);
        return w * (gamma * std::sin(phi) * std::sin(r * phi) + (h - std::cos(phi)) * std::cos(r * phi));
      },
      b);
  return value / kPi;
}

std::vector<double> g_equilibrium_range(int r_max, double h, double gamma, double temperature) {
  check_temperature(temperature);
  if (r_max < 0) throw Error(ErrorKind::DomainError, "r_max must be >= 0");
  const std::size_t n = static_cast<std::size_t>(r_max) + 1;
  // Components [0, n): gamma sin(phi) sin(k phi) w;  [n, 2n): (h - cos phi) cos(k phi) w.
  const quad::VectorIntegrand f = [&](double phi, std::span<double> out) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double w = thermal_weight(dispersion(phi, h, gamma), temperature);
    const double odd = w * gamma * s;
    const double even = w * (h - c);
    double ck = 1.0;
    double sk = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = odd * sk;
      out[n + k] = even * ck;
      const double next_c = ck * c - sk * s;
      sk = sk * c + ck * s;
      ck = next_c;
    }
  };
  const auto b = breakpoints(r_max, {h});
  const auto res = quad::integrate(f, 2 * n, b);
  std::vector<double> g(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double odd = res.value[k] / kPi;
    const double even = res.value[n + k] / kPi;
    g[r_max + k] = even + odd;
    g[r_max - k] = even - odd;
  }
  return g;
}

QuenchValues quench_correlators(int r, const XYParams& params) {
  params.validate();
  const double g = params.gamma;
  const double h0 = params.h0;
  const double hf = params.hf;
  const double t = params.time;
  const double dh = h0 - hf;
  const double temp = params.temperature;

  // Oscillation count of cos(2 Lambda_f t) sets the initial panel density.
  const int osc = static_cast<int>(std::min(4.0 * t * (1.0 + std::abs(hf) + g), 4000.0));
  const auto b = breakpoints(std::max(std::abs(r), osc), {h0, hf});

  const quad::VectorIntegrand f = [&](double phi, std::span<double> out) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double l0 = dispersion(phi, h0, g);
    const double lf = dispersion(phi, hf, g);
    const double th = temp == 0.0 ? 1.0 : std::tanh(0.5 * l0 / temp);
    const double gs2 = g * g * s * s;
    const double cos2 = std::cos(2.0 * lf * t);
    const double denom = l0 * lf * lf;
    if (denom == 0.0) {
      out[0] = out[1] = out[2] = 0.0;
      return;
    }
    const double pre = th / denom;
    const double bracket1 = gs2 + (h0 - c) * (hf - c) - dh * (hf - c) * cos2;
    const double bracket2 = (gs2 + (h0 - c) * (hf - c)) * (c - hf) - dh * gs2 * cos2;
    out[0] = g * std::sin(r * phi) * s * pre * bracket1;
    out[1] = -std::cos(r * phi) * pre * bracket2;
    out[2] = std::sin(r * phi) * s * th * std::sin(2.0 * lf * t) / (l0 * lf);
  };
  QuenchValues v;
  if (dh == 0.0) {
    // The S_R prefactor vanishes identically.
    const quad::VectorIntegrand fg = [&](double phi, std::span<double> out) {
      double tmp[3];
      f(phi, tmp);
      out[0] = tmp[0];
      out[1] = tmp[1];
    };
    const auto res = quad::integrate(fg, 2, b);
    v.g = (res.value[0] + res.value[1]) / kPi;
    v.s = 0.0;
    return v;
  }
  const auto res = quad::integrate(f, 3, b);
  v.g = (res.value[0] + res.value[1]) / kPi;
  v.s = g * dh * res.value[2] / kPi;
  return v;
}

double magnetization(double h, double gamma, double temperature) {
  return 0.5 * g_equilibrium(0, h, gamma, temperature);
}

EllipticPair complete_elliptic(double modulus, double complementary) {
  if (!(modulus >= 0.0 && modulus <= 1.0))
    throw Error(ErrorKind::DomainError, "elliptic modulus outside [0, 1]");
  if (complementary == 0.0) return {std::numeric_limits<double>::infinity(), 1.0};
  double a = 1.0;
  double b = complementary;
  double c = modulus;
  double sum = 0.5 * c * c;  // 2^{n-1} c_n^2 at n = 0
  double pow2 = 0.5;
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    sum += pow2 * c * c;
    if (std::abs(c) <= 1e-17 * a) break;
  }
  const double k = kPi / (2.0 * a);
  return {k, k * (1.0 - sum)};
}

double magnetization_ising_exact(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::DomainError, "closed-form magnetization needs h > 0");
  if (h == 1.0) return 1.0 / kPi;  // (h-1) K -> 0, E(1) = 1
  const double k = 2.0 * std::sqrt(h) / (h + 1.0);
  const double kc = std::abs(h - 1.0) / (h + 1.0);
  const auto ke = complete_elliptic(std::min(k, 1.0), kc);
  return (((h - 1.0) / h) * ke.k + ((h + 1.0) / h) * ke.e) / (2.0 * kPi);
}

namespace {

// Toeplitz determinants det[G_{i-j+shift}]_{i,j<r}; shift -1 gives <sx sx>,
// shift +1 gives <sy sy>. `g` is indexed k + offset.
double toeplitz_det(const std::vector<double>& g, int offset, int r, int shift) {
  Eigen::MatrixXd m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = g[offset + i - j + shift];
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

CorrelatorSet correlators_at(const std::vector<double>& g, int offset, int r) {
  CorrelatorSet c;
  const double g0 = g[offset];
  c.mz = 0.5 * g0;
  c.txx = toeplitz_det(g, offset, r, -1);
  c.tyy = toeplitz_det(g, offset, r, +1);
  c.tzz = g0 * g0 - g[offset + r] * g[offset - r];
  c.txy = 0.0;
  c.r_evaluated = r;
  return c;
}

}  // namespace

CorrelatorSet evaluate_pair_correlators(const XYParams& params) {
  params.validate();
  if (!params.equilibrium())
    throw Error(ErrorKind::DomainError, "pair correlators require equilibrium parameters (h0 == hf, t == 0)");
  const double h = params.field();
  if (!params.separation.is_infinite()) {
    const int r = params.separation.value();
    if (r > kMaxSeparation) throw Error(ErrorKind::DomainError, "separation exceeds the cap of 400");
    const auto g = g_equilibrium_range(r, h, params.gamma, params.temperature);
    CorrelatorSet c = correlators_at(g, r, r);
    c.separation = params.separation;
    return c;
  }
  const auto g = g_equilibrium_range(kMaxSeparation, h, params.gamma, params.temperature);
  CorrelatorSet prev = correlators_at(g, kMaxSeparation, kInfiniteStart);
  CorrelatorSet cur = prev;
  bool settled = false;
  for (int r = 2 * kInfiniteStart; r <= kMaxSeparation; r *= 2) {
    cur = correlators_at(g, kMaxSeparation, r);
    if (std::abs(cur.txx - prev.txx) < kInfiniteTol && std::abs(cur.tyy - prev.tyy) < kInfiniteTol) {
      settled = true;
      break;
    }
    prev = cur;
  }
  cur.separation = params.separation;
  cur.r_converged = settled;
  return cur;
}

CorrelatorSet pair_correlators(const XYParams& params) {
  CorrelatorSet c = evaluate_pair_correlators(params);
  if (!c.r_converged)
    throw Error(ErrorKind::RLimitNotConverged,
                "infinite-separation limit not settled by R = " + std::to_string(c.r_evaluated));
  return c;
}

DensityMatrix two_site_state(const CorrelatorSet& c) {
  const cplx i(0.0, 1.0);
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0 + 4.0 * c.mz + c.tzz;
  m(1, 1) = 1.0 - c.tzz;
  m(2, 2) = 1.0 - c.tzz;
  m(3, 3) = 1.0 - 4.0 * c.mz + c.tzz;
  m(1, 2) = c.txx + c.tyy;
  m(2, 1) = c.txx + c.tyy;
  m(0, 3) = c.txx - c.tyy - 2.0 * i * c.txy;
  m(3, 0) = c.txx - c.tyy + 2.0 * i * c.txy;
  return DensityMatrix(0.25 * m);
}

DensityMatrix two_site_state(const XYParams& params) { return two_site_state(pair_correlators(params)); }

DensityMatrix bell_basis(const DensityMatrix& rho) {
  static const Mat4 u = bell_frame();
  Mat4 out = u.adjoint() * rho.matrix() * u;
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(out, Basis::Bell);
}

double factorizing_field(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorKind::DomainError, "gamma must lie in [0, 1]");
  return std::sqrt(1.0 - gamma * gamma);
}

}  // namespace spincorr::xy
