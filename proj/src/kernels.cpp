#include "spincorr/kernels.hpp"

#include <numbers>

#include <omp.h>

#include "spincorr/measures.hpp"

namespace spincorr::kernels {

double EntropyGrid::alpha(int i) const { return (std::numbers::pi / 2) * i / (n_alpha - 1); }

double EntropyGrid::beta(int j) const { return std::numbers::pi * j / n_beta; }

std::size_t EntropyGrid::argmin() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < value.size(); ++k)
    if (value[k] < value[best] - 1e-14) best = k;
  return best;
}

namespace {

EntropyGrid empty_grid(int n_alpha, int n_beta) {
  EntropyGrid g;
  g.n_alpha = n_alpha;
  g.n_beta = n_beta;
  g.value.assign(static_cast<std::size_t>(n_alpha) * n_beta, 0.0);
  return g;
}

}  // namespace

EntropyGrid conditional_entropy_grid_serial(const DensityMatrix& rho, int n_alpha, int n_beta) {
  EntropyGrid g = empty_grid(n_alpha, n_beta);
  for (int i = 0; i < n_alpha; ++i)
    for (int j = 0; j < n_beta; ++j)
      g.value[static_cast<std::size_t>(i) * n_beta + j] =
          measures::conditional_entropy(rho, {g.alpha(i), g.beta(j)});
  return g;
}

EntropyGrid conditional_entropy_grid_omp(const DensityMatrix& rho, int n_alpha, int n_beta) {
  EntropyGrid g = empty_grid(n_alpha, n_beta);
  const int total = n_alpha * n_beta;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < total; ++k) {
    const int i = k / n_beta;
    const int j = k % n_beta;
    g.value[k] = measures::conditional_entropy(rho, {g.alpha(i), g.beta(j)});
  }
  return g;
}

void set_threads(int threads) {
  if (threads >= 1) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace spincorr::kernels
