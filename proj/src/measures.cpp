#include "spincorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spincorr/error.hpp"
#include "spincorr/kernels.hpp"

namespace spincorr::measures {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroOutcome = 1e-14;
constexpr double kAngleTol = 1e-10;
constexpr int kMaxRefineRounds = 60;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

double qubit_entropy_unnormalized(const Mat2& m, double p) {
  const auto ev = eigvals_hermitian(m);
  const std::array<double, 2> q{std::max(0.0, ev[0] / p), std::max(0.0, ev[1] / p)};
  return shannon_bits(q);
}

// Conditional state on A (unnormalized) for the B outcome |v>.
Mat2 conditioned_on(const Mat4& rho, const Eigen::Vector2cd& v) {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap) {
      cplx acc = 0.0;
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) acc += std::conj(v(b)) * rho(2 * a + b, 2 * ap + bp) * v(bp);
      out(a, ap) = acc;
    }
  return 0.5 * (out + out.adjoint());
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double& best_x) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kAngleTol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  best_x = fc <= fd ? c : d;
  return std::min(fc, fd);
}

double x_state_eigen_entropy(const Mat4& m) {
  // Blocks {|00>,|11>} and {|01>,|10>}.
  auto pair = [](double a, double d, double off) {
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), off);
    return std::array<double, 2>{std::max(0.0, mean + r), std::max(0.0, mean - r)};
  };
  const auto outer = pair(m(0, 0).real(), m(3, 3).real(), std::abs(m(0, 3)));
  const auto inner = pair(m(1, 1).real(), m(2, 2).real(), std::abs(m(1, 2)));
  const std::array<double, 4> p{outer[0], outer[1], inner[0], inner[1]};
  return shannon_bits(p);
}

}  // namespace

Measurement canonical(Measurement m) {
  double a = wrap(m.alpha, kPi);
  double b = m.beta;
  if (a > kPi / 2) {
    a = kPi - a;
    b += kPi;
  }
  b = wrap(b, 2.0 * kPi);
  if (2.0 * kPi - b < kAngleTol) b = 0.0;
  if (b >= kPi - kAngleTol) {
    // Same axis with the two projectors exchanged.
    a = kPi / 2 - a;
    b = std::max(0.0, b - kPi);
  }
  if (a == 0.0) b = 0.0;  // beta is irrelevant at the pole
  return {a, b};
}

bool is_x_state(const DensityMatrix& rho, double tol) {
  const Mat4& m = rho.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool on_pattern = i == j || i + j == 3;
      if (!on_pattern && std::abs(m(i, j)) > tol) return false;
    }
  return true;
}

double concurrence_wootters(const DensityMatrix& rho) {
  // lambda_i are the singular values of V^T (y x y) V with rho = V V^+.
  const Spectrum s = eig_hermitian(rho.matrix());
  std::vector<int> keep;
  for (int k = 0; k < 4; ++k)
    if (s.values[k] > 0.0) keep.push_back(k);
  if (keep.empty()) return 0.0;
  Eigen::MatrixXcd v(4, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    v.col(static_cast<Eigen::Index>(j)) = std::sqrt(s.values[keep[j]]) * s.vectors.col(keep[j]);
  const Mat4 yy = kron(pauli::y(), pauli::y());
  const Eigen::MatrixXcd tau = v.transpose() * yy * v;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(tau).singularValues();
  double c = sv(0);
  for (Eigen::Index k = 1; k < sv.size(); ++k) c -= sv(k);
  return std::clamp(c, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  if (!is_x_state(rho, 1e-14)) return concurrence_wootters(rho);
  const Mat4& m = rho.matrix();
  const double d0 = std::max(0.0, m(0, 0).real());
  const double d1 = std::max(0.0, m(1, 1).real());
  const double d2 = std::max(0.0, m(2, 2).real());
  const double d3 = std::max(0.0, m(3, 3).real());
  const double c1 = std::abs(m(0, 3)) - std::sqrt(d1 * d2);
  const double c2 = std::abs(m(1, 2)) - std::sqrt(d0 * d3);
  return std::clamp(2.0 * std::max({0.0, c1, c2}), 0.0, 1.0);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double eof(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

double mutual_information(const DensityMatrix& rho) {
  const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
  const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
  return std::max(0.0, sa + sb - von_neumann_entropy(rho));
}

double conditional_entropy(const DensityMatrix& rho, Measurement m) {
  const double ca = std::cos(m.alpha);
  const double sa = std::sin(m.alpha);
  const cplx ph = std::polar(1.0, m.beta);
  Eigen::Vector2cd v0(ca, ph * sa);
  Eigen::Vector2cd v1(std::conj(ph) * sa, -ca);
  double total = 0.0;
  for (const auto& v : {v0, v1}) {
    const Mat2 cond = conditioned_on(rho.matrix(), v);
    const double p = cond.trace().real();
    if (p < kZeroOutcome) continue;
    total += p * qubit_entropy_unnormalized(cond, p);
  }
  return total;
}

DiscordResult refine_discord(const DensityMatrix& rho, Measurement start) {
  const double step_a = (kPi / 2) / (kGridAlpha - 1);
  const double step_b = kPi / kGridBeta;
  double alpha = start.alpha;
  double beta = start.beta;
  double best = conditional_entropy(rho, {alpha, beta});
  for (int round = 0; round < kMaxRefineRounds; ++round) {
    double new_alpha = alpha;
    const double fa = golden_min([&](double a) { return conditional_entropy(rho, {a, beta}); },
                                 alpha - step_a, alpha + step_a, new_alpha);
    if (fa < best) {
      best = fa;
    } else {
      new_alpha = alpha;
    }
    double new_beta = beta;
    const double fb = golden_min([&](double b) { return conditional_entropy(rho, {new_alpha, b}); },
                                 beta - step_b, beta + step_b, new_beta);
    if (fb < best) {
      best = fb;
    } else {
      new_beta = beta;
    }
    const double move = std::max(std::abs(new_alpha - alpha), std::abs(new_beta - beta));
    alpha = new_alpha;
    beta = new_beta;
    if (move <= kAngleTol) break;
  }
  DiscordResult res;
  res.argmin = canonical({alpha, beta});
  res.conditional_entropy = best;
  const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
  res.discord = std::max(0.0, sb - von_neumann_entropy(rho) + best);
  return res;
}

DiscordResult discord_numeric(const DensityMatrix& rho) {
  const auto grid = kernels::conditional_entropy_grid_omp(rho, kGridAlpha, kGridBeta);
  const std::size_t k = grid.argmin();
  const int i = static_cast<int>(k) / grid.n_beta;
  const int j = static_cast<int>(k) % grid.n_beta;
  return refine_discord(rho, {grid.alpha(i), grid.beta(j)});
}

double discord_xstate(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  if (!is_x_state(rho, 1e-10) || m.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::NotXState, "state is not a real X-state");
  const double r00 = m(0, 0).real();
  const double r11 = m(1, 1).real();
  const double r22 = m(2, 2).real();
  const double r33 = m(3, 3).real();
  const double a3 = r00 + r11 - r22 - r33;
  const double b3 = r00 - r11 + r22 - r33;
  const double txx = 2.0 * (m(0, 3).real() + m(1, 2).real());
  const double tyy = 2.0 * (m(1, 2).real() - m(0, 3).real());

  auto bloch_entropy = [](double radius) { return binary_entropy(0.5 * (1.0 + std::min(1.0, radius))); };

  // sigma_z on B: outcomes |0> (entries 00, 10) and |1> (entries 01, 11).
  double sz = 0.0;
  for (const auto& [p, top] : {std::pair{r00 + r22, r00}, std::pair{r11 + r33, r11}}) {
    if (p < kZeroOutcome) continue;
    sz += p * binary_entropy(std::clamp(top / p, 0.0, 1.0));
  }
  const double sx = bloch_entropy(std::hypot(a3, txx));
  const double sy = bloch_entropy(std::hypot(a3, tyy));
  const double best = std::min({sz, sx, sy});

  const double s_ab = x_state_eigen_entropy(m);
  const double s_b = binary_entropy(std::clamp(0.5 * (1.0 + b3), 0.0, 1.0));
  return std::max(0.0, s_b - s_ab + best);
}

double classical_correlations(const DensityMatrix& rho) {
  return std::max(0.0, mutual_information(rho) - discord_numeric(rho).discord);
}

Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho) {
  const std::array<Mat2, 3> s{pauli::x(), pauli::y(), pauli::z()};
  Eigen::Matrix3d t;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) t(u, v) = (rho.matrix() * kron(s[u], s[v])).trace().real();
  return t;
}

double chsh_max(const DensityMatrix& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  const auto ev = eigvals_symmetric(t.transpose() * t);
  return 2.0 * std::sqrt(std::max(0.0, ev[0] + ev[1]));
}

CorrelationReport report(const DensityMatrix& rho) {
  CorrelationReport r;
  r.concurrence = concurrence(rho);
  r.eof = eof_from_concurrence(r.concurrence);
  r.mutual_info = mutual_information(rho);
  const DiscordResult d = discord_numeric(rho);
  r.discord = std::min(d.discord, r.mutual_info);
  r.classical = r.mutual_info - r.discord;
  r.chsh = chsh_max(rho);
  r.argmin = d.argmin;
  return r;
}

}  // namespace spincorr::measures
