#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "spincorr/matrix_core.hpp"

namespace testing {

using namespace spincorr;

inline constexpr double kPi = std::numbers::pi;

inline Mat4 projector(const Eigen::Vector4cd& v) { return v * v.adjoint() / v.squaredNorm(); }

inline DensityMatrix singlet() {
  Eigen::Vector4cd v(0, 1, -1, 0);
  return DensityMatrix(projector(v));
}

inline DensityMatrix phi_plus() {
  Eigen::Vector4cd v(1, 0, 0, 1);
  return DensityMatrix(projector(v));
}

inline DensityMatrix werner(double p) {
  return DensityMatrix(p * singlet().matrix() + (1.0 - p) * Mat4::Identity() / 4.0);
}

inline DensityMatrix maximally_mixed() { return DensityMatrix(Mat4::Identity() / 4.0); }

inline DensityMatrix classical_pair() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return DensityMatrix(m);
}

inline DensityMatrix basis_state(int k) {
  Mat4 m = Mat4::Zero();
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  cplx gaussian() {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng_);
    return {re, n(rng_)};
  }

  Mat2 qubit_state() {
    Mat2 g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = gaussian();
    Mat2 m = g * g.adjoint();
    m /= m.trace().real();
    return 0.5 * (m + m.adjoint());
  }

  /// Ginibre-distributed mixed state of the given rank.
  DensityMatrix state(int rank = 4) {
    Eigen::MatrixXcd g(4, rank);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < rank; ++j) g(i, j) = gaussian();
    Mat4 m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(0.5 * (m + m.adjoint()));
  }

  DensityMatrix pure_state() { return state(1); }

  /// Real X-state with the equilibrium XY sparsity pattern.
  DensityMatrix x_state() {
    Eigen::Vector4d d;
    for (int k = 0; k < 4; ++k) d(k) = uniform(0.0, 1.0);
    d /= d.sum();
    Mat4 m = Mat4::Zero();
    for (int k = 0; k < 4; ++k) m(k, k) = d(k);
    const double a = uniform(-1.0, 1.0) * std::sqrt(d(0) * d(3));
    const double b = uniform(-1.0, 1.0) * std::sqrt(d(1) * d(2));
    m(0, 3) = m(3, 0) = a;
    m(1, 2) = m(2, 1) = b;
    return DensityMatrix(m);
  }

  Mat2 unitary() {
    Mat2 g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<Mat2> qr(g);
    return qr.householderQ();
  }

  Mat4 unitary4() {
    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<Mat4> qr(g);
    return qr.householderQ();
  }

  Mat4 hermitian() {
    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = gaussian();
    return 0.5 * (g + g.adjoint());
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline DensityMatrix conjugated(const DensityMatrix& rho, const Mat4& u) {
  Mat4 m = u * rho.matrix() * u.adjoint();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

}  // namespace testing
