#include "spincorr/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <lapacke.h>

#include "spincorr/error.hpp"

namespace spincorr::ed {

namespace {

using Index = std::uint32_t;

int site_bit(int sites, int site) { return sites - 1 - site; }

// Calls emit(row, col, value) for every nonzero of H (row/col may repeat).
template <typename Emit>
void for_each_entry(const FiniteChainSpec& spec, Emit&& emit) {
  const int n = spec.sites;
  const Index dim = Index{1} << n;
  for (Index s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      const int k = (j + 1) % n;
      const Index bj = Index{1} << site_bit(n, j);
      const Index bk = Index{1} << site_bit(n, k);
      const bool up_j = (s & bj) == 0;
      const bool up_k = (s & bk) == 0;
      const double zj = up_j ? 1.0 : -1.0;
      const double zk = up_k ? 1.0 : -1.0;
      const Index flipped = s ^ bj ^ bk;
      if (spec.model == Model::XY) {
        // (1+g) SxSx + (1-g) SySy = [(1+g) xx + (1-g) yy] / 4; yy|ab> = -zj zk |~a~b>.
        const double amp = 0.25 * ((1.0 + spec.gamma) - (1.0 - spec.gamma) * zj * zk);
        if (amp != 0.0) emit(flipped, s, amp);
        diag += -0.5 * spec.h * zj;
      } else {
        diag += spec.coupling * zj * zk + spec.b * zj;
        if (up_j != up_k) emit(flipped, s, 2.0 * spec.coupling);
      }
    }
    emit(s, s, diag);
  }
}

struct Eigenpair {
  double energy;
  int block;
  int column;
};

struct Block {
  std::vector<Index> states;  // full-space indices with this parity
  std::vector<double> vectors;  // column-major eigenvectors
  std::vector<double> energies;
};

// Both models conserve the parity of the number of down spins.
std::array<Block, 2> diagonalize(const FiniteChainSpec& spec) {
  const Index dim = Index{1} << spec.sites;
  std::array<Block, 2> blocks;
  std::vector<int> position(dim);
  for (Index s = 0; s < dim; ++s) {
    auto& b = blocks[std::popcount(s) & 1];
    position[s] = static_cast<int>(b.states.size());
    b.states.push_back(s);
  }
  for (auto& b : blocks) {
    const std::size_t m = b.states.size();
    b.vectors.assign(m * m, 0.0);
    b.energies.assign(m, 0.0);
  }
  for_each_entry(spec, [&](Index row, Index col, double v) {
    auto& b = blocks[std::popcount(col) & 1];
    const std::size_t m = b.states.size();
    b.vectors[static_cast<std::size_t>(position[col]) * m + position[row]] += v;
  });
  for (auto& b : blocks) {
    const auto m = static_cast<lapack_int>(b.states.size());
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', m, b.vectors.data(), m, b.energies.data());
    if (info != 0) throw Error(ErrorKind::InvalidState, "dsyevd failed with info " + std::to_string(info));
  }
  return blocks;
}

}  // namespace

void FiniteChainSpec::validate() const {
  if (sites < kMinSites || sites > kMaxSites)
    throw Error(ErrorKind::SizeLimit, "chain length must lie in [2, 12], got " + std::to_string(sites));
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw Error(ErrorKind::DomainError, "temperature must be finite and >= 0");
  if (model == Model::XY && !(gamma >= 0.0 && gamma <= 1.0))
    throw Error(ErrorKind::DomainError, "gamma must lie in [0, 1]");
  if (model == Model::Heisenberg && !(coupling > 0.0))
    throw Error(ErrorKind::DomainError, "Heisenberg coupling must be > 0");
}

Eigen::MatrixXd build_hamiltonian(const FiniteChainSpec& spec) {
  spec.validate();
  const Index dim = Index{1} << spec.sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for_each_entry(spec, [&](Index row, Index col, double v) { h(row, col) += v; });
  return h;
}

DensityMatrix reduced_pair_state(const FiniteChainSpec& spec, int r, int site) {
  spec.validate();
  const int n = spec.sites;
  if (r < 1 || 2 * r > n) throw Error(ErrorKind::DomainError, "separation must satisfy 1 <= R <= N/2");
  if (site < 0 || site >= n) throw Error(ErrorKind::DomainError, "site index out of range");
  const auto blocks = diagonalize(spec);

  std::vector<Eigenpair> pairs;
  double e_min = std::numeric_limits<double>::infinity();
  double e_abs = 0.0;
  for (int bi = 0; bi < 2; ++bi)
    for (std::size_t c = 0; c < blocks[bi].energies.size(); ++c) {
      const double e = blocks[bi].energies[c];
      pairs.push_back({e, bi, static_cast<int>(c)});
      e_min = std::min(e_min, e);
      e_abs = std::max(e_abs, std::abs(e));
    }

  std::vector<double> weight(pairs.size(), 0.0);
  const double degeneracy_tol = 1e-10 * std::max(1.0, e_abs);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double gap = pairs[k].energy - e_min;
    if (spec.temperature == 0.0)
      weight[k] = gap <= degeneracy_tol ? 1.0 : 0.0;
    else
      weight[k] = std::exp(-gap / spec.temperature);
  }
  double z = 0.0;
  for (double w : weight) z += w;

  const Index bit_a = Index{1} << site_bit(n, site);
  const Index bit_b = Index{1} << site_bit(n, (site + r) % n);
  const Index dim = Index{1} << n;
  std::array<std::vector<int>, 2> position;
  for (int bi = 0; bi < 2; ++bi) {
    position[bi].assign(dim, -1);
    for (std::size_t i = 0; i < blocks[bi].states.size(); ++i) position[bi][blocks[bi].states[i]] = static_cast<int>(i);
  }

  Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double w = weight[k] / z;
    if (w < 1e-300) continue;
    const Block& blk = blocks[pairs[k].block];
    const std::size_t m = blk.states.size();
    const double* vec = blk.vectors.data() + static_cast<std::size_t>(pairs[k].column) * m;
    const auto& pos = position[pairs[k].block];
    for (std::size_t i = 0; i < m; ++i) {
      const Index s = blk.states[i];
      const double amp = vec[i];
      if (amp == 0.0) continue;
      const int row = 2 * ((s & bit_a) ? 1 : 0) + ((s & bit_b) ? 1 : 0);
      const Index rest = s & ~(bit_a | bit_b);
      for (int col = 0; col < 4; ++col) {
        const Index t = rest | ((col & 2) ? bit_a : 0) | ((col & 1) ? bit_b : 0);
        const int j = pos[t];
        if (j < 0) continue;
        acc(row, col) += w * amp * vec[j];
      }
    }
  }
  Mat4 rho = (0.5 * (acc + acc.transpose())).cast<cplx>();
  rho /= rho.trace();
  return DensityMatrix(rho);
}

xy::CorrelatorSet oracle_correlators(const FiniteChainSpec& spec, int r) {
  const DensityMatrix rho = reduced_pair_state(spec, r);
  auto expect = [&](const Mat2& a, const Mat2& b) { return (rho.matrix() * kron(a, b)).trace().real(); };
  xy::CorrelatorSet c;
  c.txx = expect(pauli::x(), pauli::x());
  c.tyy = expect(pauli::y(), pauli::y());
  c.tzz = expect(pauli::z(), pauli::z());
  c.txy = expect(pauli::x(), pauli::y());
  c.mz = 0.5 * expect(pauli::z(), pauli::identity());
  c.separation = xy::Separation::finite(r);
  c.r_evaluated = r;
  return c;
}

}  // namespace spincorr::ed
