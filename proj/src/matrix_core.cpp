#include "spincorr/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spincorr/error.hpp"

namespace spincorr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorKind::RLimitNotConverged: return "RLimitNotConverged";
    case ErrorKind::NotXState: return "NotXState";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Error";
}

namespace {

constexpr double kOffDiagTol = 1e-14;
constexpr int kMaxSweeps = 64;

template <typename Scalar, int N>
double off_diagonal_norm(const Eigen::Matrix<Scalar, N, N>& a) {
  double s = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi for a Hermitian (or real symmetric) fixed-size matrix. Each
// rotation G acts on the (p,q) plane with G_pq = s*phase, G_qp = -s*conj(phase)
// where phase = a_pq/|a_pq|, and zeroes (G^dagger A G)_pq.
template <typename Scalar, int N>
void jacobi(Eigen::Matrix<Scalar, N, N>& a, Eigen::Matrix<Scalar, N, N>* v) {
  using std::abs;
  const double scale = std::max(1.0, a.norm());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagTol * scale) return;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double r = abs(a(p, q));
        if (r == 0.0) continue;
        const Scalar phase = a(p, q) / r;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Scalar gpq = s * phase;
        const Scalar gqp = -s * Eigen::numext::conj(phase);
        // A <- A G (columns p, q)
        for (int k = 0; k < N; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * gpq + akq * c;
        }
        // A <- G^dagger A (rows p, q)
        for (int k = 0; k < N; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk + Eigen::numext::conj(gqp) * aqk;
          a(q, k) = Eigen::numext::conj(gpq) * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        if (v != nullptr) {
          for (int k = 0; k < N; ++k) {
            const Scalar vkp = (*v)(k, p);
            const Scalar vkq = (*v)(k, q);
            (*v)(k, p) = vkp * c + vkq * gqp;
            (*v)(k, q) = vkp * gpq + vkq * c;
          }
        }
      }
    }
  }
}

double hermiticity_defect(const Mat4& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

Spectrum eig_hermitian(const Mat4& m) {
  if (hermiticity_defect(m) > 1e-10)
    throw Error(ErrorKind::NonHermitianInput, "4x4 matrix is not Hermitian within 1e-10");
  Mat4 a = 0.5 * (m + m.adjoint());
  Mat4 v = Mat4::Identity();
  jacobi(a, &v);

  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return std::real(a(i, i)) > std::real(a(j, j)); });
  Spectrum out;
  for (int k = 0; k < 4; ++k) {
    out.values[k] = std::real(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

std::array<double, 2> eigvals_hermitian(const Mat2& m) {
  const double a = std::real(m(0, 0));
  const double d = std::real(m(1, 1));
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  const double mean = 0.5 * (a + d);
  return {mean + half_gap, mean - half_gap};
}

std::array<double, 3> eigvals_symmetric(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d a = 0.5 * (m + m.transpose());
  jacobi<double, 3>(a, nullptr);
  std::array<double, 3> out{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;

double clamp_eigenvalue(double lambda) {
  if (lambda < -kPsdTol)
    throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(lambda));
  return lambda < 0.0 ? 0.0 : lambda;
}

}  // namespace

DensityMatrix::DensityMatrix(const Mat4& entries, Basis basis) : m_(entries), basis_(basis) {
  if (!m_.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite entries");
  if (hermiticity_defect(m_) > kHermTol)
    throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kTraceTol)
    throw Error(ErrorKind::InvalidState, "trace differs from one");
  const Spectrum spec = eig_hermitian(m_);
  for (int k = 0; k < 4; ++k) eig_[k] = clamp_eigenvalue(spec.values[k]);
}

QubitState::QubitState(const Mat2& entries) : m_(entries) {
  if (!m_.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite entries");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw Error(ErrorKind::InvalidState, "qubit state is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kTraceTol)
    throw Error(ErrorKind::InvalidState, "qubit trace differs from one");
  clamp_eigenvalue(eigvals_hermitian(m_)[1]);
}

double shannon_bits(std::span<const double> p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log2(x);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto& ev = rho.eigenvalues();
  return std::max(0.0, shannon_bits(ev));
}

double von_neumann_entropy(const QubitState& rho) {
  const auto ev = eigvals_hermitian(rho.matrix());
  const std::array<double, 2> p{clamp_eigenvalue(ev[0]), clamp_eigenvalue(ev[1])};
  return std::max(0.0, shannon_bits(p));
}

QubitState partial_trace(const DensityMatrix& rho, Subsystem keep) {
  // Basis index = 2*a + b.
  const Mat4& m = rho.matrix();
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
      }
    }
  }
  // Exact Hermitian part; removes sub-ulp asymmetry from the summation.
  return QubitState(0.5 * (out + out.adjoint()));
}

double binary_entropy(double x) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
    throw Error(ErrorKind::DomainError, "binary_entropy argument outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  const std::array<double, 2> p{x, 1.0 - x};
  return shannon_bits(p);
}

namespace pauli {
Mat2 identity() { return Mat2::Identity(); }
Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace spincorr
