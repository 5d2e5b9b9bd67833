#pragma once

// Two-site correlators of the infinite transverse-field XY chain
//   H = sum_j [(1+g) Sx_j Sx_{j+1} + (1-g) Sy_j Sy_{j+1}] - h sum_j Sz_j
// from the free-fermion correlator integrals G_R, and the two-site thermal
// state assembled from them.

#include <string>
#include <vector>

#include "spincorr/matrix_core.hpp"

namespace spincorr::xy {

/// Spin separation: a finite R >= 1, or the infinite-distance limit.
class Separation {
 public:
  static Separation finite(int r);
  static Separation infinite() { return Separation(-1); }

  bool is_infinite() const noexcept { return r_ < 0; }
  int value() const;  // throws DomainError for the infinite marker
  std::string to_string() const;

  /// Parses a positive integer or "inf".
  static Separation parse(const std::string& text);

  friend bool operator==(const Separation&, const Separation&) = default;

 private:
  explicit Separation(int r) : r_(r) {}
  int r_;
};

/// Temperature T >= 0 with k = 1. T == 0 is the tagged ground-state limit in
/// which tanh(Lambda / 2T) is replaced by one; it is never divided by.
struct XYParams {
  double gamma = 0.5;
  double h0 = 0.0;
  double hf = 0.0;
  double time = 0.0;
  double temperature = 0.0;
  Separation separation = Separation::finite(1);

  static XYParams equilibrium_at(double gamma, double h, double temperature, Separation r);

  bool equilibrium() const noexcept { return h0 == hf && time == 0.0; }
  double field() const noexcept { return hf; }
  void validate() const;
};

struct CorrelatorSet {
  double txx = 0.0;
  double tyy = 0.0;
  double tzz = 0.0;
  double txy = 0.0;
  double mz = 0.0;
  Separation separation = Separation::finite(1);
  /// Finite R actually evaluated (the last doubling step for the infinite marker).
  int r_evaluated = 1;
  /// False when the infinite-distance doubling hit the R cap.
  bool r_converged = true;
};

inline constexpr int kMaxSeparation = 400;
inline constexpr int kInfiniteStart = 50;
inline constexpr double kInfiniteTol = 1e-8;

double dispersion(double phi, double h, double gamma);

/// G_R at equilibrium (h0 = hf = h, t = 0):
///   G_R = (1/pi) int_0^pi dphi tanh(Lambda/2T)/Lambda
///                 [g sin(phi) sin(R phi) + (h - cos phi) cos(R phi)].
double g_equilibrium(int r, double h, double gamma, double temperature);

/// All G_k for k in [-r_max, r_max] from one adaptive pass; element k + r_max.
std::vector<double> g_equilibrium_range(int r_max, double h, double gamma, double temperature);

struct QuenchValues {
  double g = 0.0;
  double s = 0.0;
};

/// Time-dependent G_R(t), S_R(t) after a sudden field change h0 -> hf from a
/// thermal state at h0.
QuenchValues quench_correlators(int r, const XYParams& params);

/// M_z = G_0 / 2.
double magnetization(double h, double gamma, double temperature);

/// Complete elliptic integrals K(k), E(k) of modulus k by the AGM. The
/// complementary modulus k' = sqrt(1 - k^2) is passed explicitly so that
/// callers near k = 1 keep full precision.
struct EllipticPair {
  double k = 0.0;
  double e = 0.0;
};
EllipticPair complete_elliptic(double modulus, double complementary);

/// Ground-state transverse Ising (g = 1) magnetization in closed form:
///   M = [((h-1)/h) K(k) + ((h+1)/h) E(k)] / (2 pi),  k = 2 sqrt(h) / (h+1).
double magnetization_ising_exact(double h);

/// Equilibrium correlators. Throws RLimitNotConverged for the infinite marker
/// when doubling reaches kMaxSeparation without settling.
CorrelatorSet pair_correlators(const XYParams& params);

/// As pair_correlators, but reports an unsettled infinite-distance limit via
/// `r_converged` instead of throwing.
CorrelatorSet evaluate_pair_correlators(const XYParams& params);

/// Computational-basis two-site state; InvalidState if it is not PSD.
DensityMatrix two_site_state(const CorrelatorSet& c);
DensityMatrix two_site_state(const XYParams& params);

/// Unitary change to the Bell basis {Phi+, Phi-, Psi+, Psi-}.
DensityMatrix bell_basis(const DensityMatrix& rho);

/// h_f = sqrt(1 - g^2), where the ground state factorizes.
double factorizing_field(double gamma);

}  // namespace spincorr::xy
