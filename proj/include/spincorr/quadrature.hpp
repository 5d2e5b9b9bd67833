#pragma once

#include <functional>
#include <span>
#include <vector>

namespace spincorr::quad {

struct Options {
  double abs_tol = 1e-10;
  int max_panels = 4096;
};

/// Fills `out` with the integrand components at x.
using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

struct Result {
  std::vector<double> value;
  std::vector<double> error;
  int panels = 0;
};

/// Nodes and weights of the 31-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss31();

/// Globally adaptive bisection over [breaks.front(), breaks.back()] with the
/// interior breakpoints as forced panel edges. Each panel's error is
/// |G31(panel) - G31(left) - G31(right)|; the largest-error panel is split
/// until every component's summed error is below abs_tol. Throws
/// QuadratureNoConvergence once the panel count would exceed max_panels.
Result integrate(const VectorIntegrand& f, std::size_t dim, std::span<const double> breaks,
                 const Options& opts = {});

double integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 const Options& opts = {});

}  // namespace spincorr::quad
