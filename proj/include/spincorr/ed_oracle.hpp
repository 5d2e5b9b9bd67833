#pragma once

// Brute-force oracle: dense exact diagonalization of short periodic chains.
// Shares no code with the free-fermion route beyond the two-qubit types.

#include <Eigen/Dense>

#include "spincorr/matrix_core.hpp"
#include "spincorr/xy_correlators.hpp"

namespace spincorr::ed {

enum class Model { XY, Heisenberg };

inline constexpr int kMinSites = 2;
inline constexpr int kMaxSites = 12;

/// Periodic chain of N in [2, 12] sites. XY uses (gamma, h) with spin-1/2
/// operators S = sigma/2; Heisenberg uses (coupling J, field B) with Pauli
/// operators. T == 0 selects the uniform mixture over the ground space.
struct FiniteChainSpec {
  int sites = 8;
  Model model = Model::XY;
  double gamma = 0.5;
  double h = 0.0;
  double coupling = 1.0;
  double b = 0.0;
  double temperature = 1.0;

  void validate() const;
};

/// Dense 2^N x 2^N Hamiltonian. Site s is bit (N-1-s) of the basis index and
/// a zero bit is the sz = +1 state.
Eigen::MatrixXd build_hamiltonian(const FiniteChainSpec& spec);

/// Thermal (or ground-space) state traced down to sites (site, site + R).
DensityMatrix reduced_pair_state(const FiniteChainSpec& spec, int r, int site = 0);

/// Pauli-pair expectations in the reduced state; mz = <sz>/2.
xy::CorrelatorSet oracle_correlators(const FiniteChainSpec& spec, int r);

}  // namespace spincorr::ed
