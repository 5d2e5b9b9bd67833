#pragma once

// Two-qubit Heisenberg ring H = sum_i (B sz_i + J s_i . s_{i+1}) with
// periodic boundary (the single bond counted twice), in closed form.

#include "spincorr/matrix_core.hpp"

namespace spincorr::heisenberg {

/// Antiferromagnetic coupling J > 0, field B, temperature T >= 0 (k_B = 1).
/// T == 0 selects the ground-state limit.
struct HeisenbergParams {
  double coupling = 1.0;
  double field = 0.0;
  double temperature = 1.0;

  void validate() const;
  double w() const { return coupling / temperature; }
  double y() const { return field / temperature; }
};

/// diag(2J+2B, -2J, -2J, 2J-2B) with 4J coupling |01> and |10>.
Mat4 hamiltonian(double coupling, double field);

/// Explicit Gibbs matrix built from the exponentials
/// exp(-2w-2y), exp(-2w) +/- exp(6w), exp(-2w+2y), normalised by their sum.
/// Every weight is taken relative to the largest so nothing overflows.
/// T == 0 returns ground_state.
DensityMatrix thermal_state(const HeisenbergParams& p);

/// Independent route: exp(-H/T)/Z from the Jacobi spectrum of H.
DensityMatrix thermal_state_spectral(const HeisenbergParams& p);

/// C = (e^{8w} - 3) / (1 + e^{-2y} + e^{2y} + e^{8w}) below T_c, else 0.
/// DomainError for T <= 0.
double concurrence_closed(const HeisenbergParams& p);

struct CriticalPoints {
  double temperature = 0.0;  // T_c = 8J / ln 3
  double field = 0.0;        // B_c = 4J
};
CriticalPoints critical_points(double coupling);

/// Uniform mixture over the lowest level(s) of {2J+2B: |00>, 2J: Psi+,
/// -6J: Psi-, 2J-2B: |11>}; levels within 1e-12 J are degenerate.
DensityMatrix ground_state(double coupling, double field);

}  // namespace spincorr::heisenberg
