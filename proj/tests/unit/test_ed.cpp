#include <doctest.h>

#include "spincorr/ed_oracle.hpp"
#include "spincorr/error.hpp"
#include "spincorr/heisenberg.hpp"
#include "spincorr/xy_correlators.hpp"
#include "support.hpp"

using namespace testing;
using namespace spincorr::ed;

namespace {

FiniteChainSpec xy_spec(int n, double gamma, double h, double t) {
  FiniteChainSpec s;
  s.sites = n;
  s.model = Model::XY;
  s.gamma = gamma;
  s.h = h;
  s.temperature = t;
  return s;
}

// Cyclic shift by one site as a permutation of basis states (site s is bit N-1-s).
Eigen::MatrixXd shift_operator(int n) {
  const int dim = 1 << n;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const int rotated = ((b >> 1) | ((b & 1) << (n - 1))) & (dim - 1);
    p(rotated, b) = 1.0;
  }
  return p;
}

Eigen::MatrixXd total_sz(int n) {
  const int dim = 1 << n;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    int up = 0;
    for (int k = 0; k < n; ++k) up += ((b >> k) & 1) ? 0 : 1;
    s(b, b) = 0.5 * (2 * up - n);
  }
  return s;
}

xy::CorrelatorSet chain(double gamma, double h, double t, int r) {
  return xy::pair_correlators(xy::XYParams::equilibrium_at(gamma, h, t, xy::Separation::finite(r)));
}

}  // namespace

TEST_SUITE("ed_oracle") {
  TEST_CASE("size limits") {
    CHECK_THROWS_AS(build_hamiltonian(xy_spec(13, 0.5, 0.5, 1.0)), Error);
    CHECK_THROWS_AS(build_hamiltonian(xy_spec(1, 0.5, 0.5, 1.0)), Error);
    CHECK_NOTHROW(build_hamiltonian(xy_spec(2, 0.5, 0.5, 1.0)));
  }

  TEST_CASE("Hamiltonians are symmetric and translation invariant") {
    for (int n : {3, 5, 8}) {
      const auto h = build_hamiltonian(xy_spec(n, 0.4, 0.7, 1.0));
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
      const auto p = shift_operator(n);
      CHECK((p * h - h * p).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("isotropic XY conserves total Sz") {
    for (int n : {4, 6}) {
      const auto h = build_hamiltonian(xy_spec(n, 0.0, 0.0, 1.0));
      const auto s = total_sz(n);
      CHECK((h * s - s * h).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("two-site Ising bond couples only the x channel") {
    const auto h = build_hamiltonian(xy_spec(2, 1.0, 0.0, 1.0));
    // Doubled bond 2 * 2 SxSx = sx sx: flips both spins.
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    expect(0, 3) = expect(3, 0) = expect(1, 2) = expect(2, 1) = 1.0;
    CHECK((h - expect).cwiseAbs().maxCoeff() <= 1e-14);
    const auto c = oracle_correlators(xy_spec(2, 1.0, 0.0, 0.0), 1);
    CHECK(std::abs(c.txx + 1.0) <= 1e-12);
  }

  TEST_CASE("Heisenberg pair matches the closed forms") {
    FiniteChainSpec s;
    s.sites = 2;
    s.model = Model::Heisenberg;
    s.coupling = 1.0;
    s.b = 1.0;
    s.temperature = 1.0;
    const auto h = build_hamiltonian(s);
    const Mat4 ref = heisenberg::hamiltonian(1.0, 1.0);
    CHECK((h - ref.real()).cwiseAbs().maxCoeff() <= 1e-14);
    for (double t : {0.3, 1.0, 4.0}) {
      s.temperature = t;
      const auto rho = reduced_pair_state(s, 1);
      CHECK((rho.matrix() - heisenberg::thermal_state({1.0, 1.0, t}).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    s.temperature = 0.0;
    s.b = 4.0;
    CHECK((reduced_pair_state(s, 1).matrix() - heisenberg::ground_state(1.0, 4.0).matrix()).cwiseAbs().maxCoeff() <=
          1e-12);
  }

  TEST_CASE("infinite temperature gives the maximally mixed pair") {
    const auto rho = reduced_pair_state(xy_spec(6, 0.5, 0.8, 1e9), 2);
    CHECK((rho.matrix() - Mat4::Identity() / 4.0).cwiseAbs().maxCoeff() <= 1e-8);
  }

  TEST_CASE("polarized chain") {
    const auto c = oracle_correlators(xy_spec(8, 0.5, 50.0, 0.1), 1);
    CHECK(std::abs(c.tzz - 1.0) <= 1e-3);
    CHECK(std::abs(c.txx) <= 1e-2);
  }

  TEST_CASE("site choice is irrelevant") {
    const auto spec = xy_spec(8, 0.5, 0.6, 0.7);
    const auto a = reduced_pair_state(spec, 2, 0);
    for (int site : {1, 3, 5}) {
      const auto b = reduced_pair_state(spec, 2, site);
      CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("finite-size drift shrinks with N") {
    const double t8 = oracle_correlators(xy_spec(8, 0.5, 0.5, 1.0), 1).txx;
    const double t10 = oracle_correlators(xy_spec(10, 0.5, 0.5, 1.0), 1).txx;
    const double t12 = oracle_correlators(xy_spec(12, 0.5, 0.5, 1.0), 1).txx;
    CHECK(std::abs(t12 - t10) < std::abs(t10 - t8));
  }

  TEST_CASE("N = 12 ring agrees with the infinite chain at T = 1") {
    const auto e = oracle_correlators(xy_spec(12, 0.5, 0.5, 1.0), 1);
    const auto q = chain(0.5, 0.5, 1.0, 1);
    CHECK(std::abs(e.txx - q.txx) <= 2e-2);
    CHECK(std::abs(e.tyy - q.tyy) <= 2e-2);
    CHECK(std::abs(e.tzz - q.tzz) <= 2e-2);
    CHECK(std::abs(e.mz - q.mz) <= 2e-2);
  }

  TEST_CASE("oracle gap shrinks as temperature grows") {
    double prev = 1.0;
    for (double t : {0.5, 1.0, 2.0}) {
      const double gap = std::abs(oracle_correlators(xy_spec(8, 0.5, 0.5, t), 1).txx - chain(0.5, 0.5, t, 1).txx);
      CHECK(gap < prev);
      prev = gap;
    }
  }

  TEST_CASE("separation must fit the ring") {
    CHECK_THROWS_AS(reduced_pair_state(xy_spec(6, 0.5, 0.5, 1.0), 4), Error);
    CHECK_THROWS_AS(reduced_pair_state(xy_spec(6, 0.5, 0.5, 1.0), 0), Error);
  }
}
