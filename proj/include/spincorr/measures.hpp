#pragma once

// Bipartite correlation measures of a two-qubit state. All entropies are in
// bits. Measurements act on subsystem B.

#include "spincorr/matrix_core.hpp"

namespace spincorr::measures {

/// Projective measurement on B along
///   |0'> = cos(alpha)|0> + e^{i beta} sin(alpha)|1>,
///   |1'> = e^{-i beta} sin(alpha)|0> - cos(alpha)|1>.
/// The pair (alpha, beta) and (pi - alpha, beta + pi) give the same
/// projectors, and (pi/2 - alpha, beta + pi) swaps them.
struct Measurement {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Maps any angle pair to the equivalent one in [0, pi/2] x [0, pi).
Measurement canonical(Measurement m);

struct CorrelationReport {
  double concurrence = 0.0;
  double eof = 0.0;
  double discord = 0.0;
  double classical = 0.0;
  double mutual_info = 0.0;
  double chsh = 0.0;
  Measurement argmin;
};

/// Wootters concurrence. Exact X-pattern states use
/// 2 max(0, |rho_03| - sqrt(rho_11 rho_22), |rho_12| - sqrt(rho_00 rho_33));
/// everything else goes through concurrence_wootters.
double concurrence(const DensityMatrix& rho);

/// General route: square roots of the spectrum of sqrt(rho) rho~ sqrt(rho).
double concurrence_wootters(const DensityMatrix& rho);

double eof_from_concurrence(double c);
double eof(const DensityMatrix& rho);

double mutual_information(const DensityMatrix& rho);

/// sum_i p_i S(rho_{A|i}); outcomes with p_i < 1e-14 contribute zero.
double conditional_entropy(const DensityMatrix& rho, Measurement m);

struct DiscordResult {
  double discord = 0.0;
  Measurement argmin;
  double conditional_entropy = 0.0;  // at argmin
};

inline constexpr int kGridAlpha = 64;
inline constexpr int kGridBeta = 64;

/// 64x64 grid over [0, pi/2] x [0, pi) followed by coordinate-wise
/// golden-section refinement to 1e-10 in the angles.
DiscordResult discord_numeric(const DensityMatrix& rho);

/// Local refinement from an arbitrary start; exposed for multi-start checks.
DiscordResult refine_discord(const DensityMatrix& rho, Measurement start);

/// Closed form for real X-states: the conditional entropy is minimised over
/// measurements along x, y and z. Throws NotXState for other inputs.
double discord_xstate(const DensityMatrix& rho);

/// True when every entry off the diagonal and anti-diagonal is below `tol`.
bool is_x_state(const DensityMatrix& rho, double tol = 1e-10);

double classical_correlations(const DensityMatrix& rho);

/// Horodecki maximal CHSH value 2 sqrt(t1 + t2), t1 >= t2 the two largest
/// eigenvalues of T^T T with T_uv = Tr[rho sigma_u (x) sigma_v].
double chsh_max(const DensityMatrix& rho);

/// 3x3 correlation matrix T_uv, u, v in {x, y, z}.
Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho);

CorrelationReport report(const DensityMatrix& rho);

}  // namespace spincorr::measures
