#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin that produces
// bit-identical output; the serial versions are the test reference.

#include <functional>
#include <vector>

#include "spincorr/matrix_core.hpp"

namespace spincorr::kernels {

/// Conditional-entropy landscape for the discord grid search. Row-major in
/// alpha: value[i * n_beta + j] at alpha_i = i (pi/2) / (n_alpha - 1),
/// beta_j = j pi / n_beta.
struct EntropyGrid {
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<double> value;

  double alpha(int i) const;
  double beta(int j) const;
  /// First minimum in row-major order: ties go to the smallest alpha, then
  /// the smallest beta.
  std::size_t argmin() const;
};

EntropyGrid conditional_entropy_grid_serial(const DensityMatrix& rho, int n_alpha, int n_beta);
EntropyGrid conditional_entropy_grid_omp(const DensityMatrix& rho, int n_alpha, int n_beta);

/// Evaluates `task(i)` for i in [0, n) and stores results in index order.
template <typename Row>
std::vector<Row> map_indexed_serial(std::size_t n, const std::function<Row(std::size_t)>& task) {
  std::vector<Row> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = task(i);
  return out;
}

template <typename Row>
std::vector<Row> map_indexed_omp(std::size_t n, const std::function<Row(std::size_t)>& task) {
  std::vector<Row> out(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = task(static_cast<std::size_t>(i));
  return out;
}

/// Sets the OpenMP worker count; values < 1 leave the runtime default.
void set_threads(int threads);
int max_threads();

}  // namespace spincorr::kernels
