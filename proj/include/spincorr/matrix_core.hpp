#pragma once

// Small fixed-size Hermitian algebra for two-qubit states: a Jacobi
// eigensolver, von Neumann entropy, partial traces.

#include <array>
#include <complex>
#include <span>

#include <Eigen/Dense>

namespace spincorr {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

enum class Basis { Computational, Bell };
enum class Subsystem { A, B };

/// Eigen-decomposition of a 4x4 Hermitian matrix. Eigenvalues are sorted
/// descending and `vectors.col(k)` belongs to `values[k]`.
struct Spectrum {
  std::array<double, 4> values{};
  Mat4 vectors = Mat4::Identity();
};

/// Cyclic complex Jacobi rotations until the off-diagonal Frobenius norm
/// drops below 1e-14 (scaled by the matrix norm when it exceeds one).
/// Throws NonHermitianInput when |M - M^dagger| exceeds 1e-10.
Spectrum eig_hermitian(const Mat4& m);

/// Eigenvalues of a 2x2 Hermitian matrix, descending.
std::array<double, 2> eigvals_hermitian(const Mat2& m);

/// Same Jacobi sweep for a real symmetric 3x3 matrix; values descending.
std::array<double, 3> eigvals_symmetric(const Eigen::Matrix3d& m);

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
  /// (minimum eigenvalue >= -1e-10). Throws InvalidState otherwise.
  explicit DensityMatrix(const Mat4& entries, Basis basis = Basis::Computational);

  const Mat4& matrix() const noexcept { return m_; }
  Basis basis() const noexcept { return basis_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  /// Eigenvalues with roundoff negatives in [-1e-10, 0) clamped to zero.
  const std::array<double, 4>& eigenvalues() const noexcept { return eig_; }

 private:
  Mat4 m_;
  Basis basis_;
  std::array<double, 4> eig_{};
};

class QubitState {
 public:
  explicit QubitState(const Mat2& entries);

  const Mat2& matrix() const noexcept { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

 private:
  Mat2 m_;
};

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const QubitState& rho);

/// Entropy in bits of a probability vector; zero weights contribute zero.
double shannon_bits(std::span<const double> p);

QubitState partial_trace(const DensityMatrix& rho, Subsystem keep);

/// h2(x) = -x log2 x - (1-x) log2 (1-x). DomainError outside [0,1] beyond
/// 1e-12 slack; values inside the slack are clamped.
double binary_entropy(double x);

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

Mat4 kron(const Mat2& a, const Mat2& b);

}  // namespace spincorr
