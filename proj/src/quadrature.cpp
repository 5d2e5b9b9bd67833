#include "spincorr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <memory>
#include <queue>
#include <string>

#include "spincorr/error.hpp"

namespace spincorr::quad {

namespace {

GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> fine;   // G31(left) + G31(right)
  std::vector<double> left;   // G31 on each half, reused when split
  std::vector<double> right;
  std::vector<double> err;
  double max_err = 0.0;
  std::size_t seq = 0;
};

class Integrator {
 public:
  Integrator(const VectorIntegrand& f, std::size_t dim)
      : f_(f), dim_(dim), rule_(gauss31()), buf_(dim) {}

  std::vector<double> rule_on(double a, double b) {
    std::vector<double> acc(dim_, 0.0);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      f_(mid + half * rule_.nodes[i], buf_);
      const double w = half * rule_.weights[i];
      for (std::size_t k = 0; k < dim_; ++k) acc[k] += w * buf_[k];
    }
    return acc;
  }

  Panel make_panel(double a, double b, const std::vector<double>& coarse, std::size_t seq) {
    Panel p;
    p.a = a;
    p.b = b;
    p.seq = seq;
    const double m = 0.5 * (a + b);
    p.left = rule_on(a, m);
    p.right = rule_on(m, b);
    p.fine.resize(dim_);
    p.err.resize(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
      p.fine[k] = p.left[k] + p.right[k];
      p.err[k] = std::abs(p.fine[k] - coarse[k]);
      p.max_err = std::max(p.max_err, p.err[k]);
    }
    return p;
  }

 private:
  const VectorIntegrand& f_;
  std::size_t dim_;
  const GaussRule& rule_;
  std::vector<double> buf_;
};

}  // namespace

const GaussRule& gauss31() {
  static const GaussRule rule = make_gauss_legendre(31);
  return rule;
}

Result integrate(const VectorIntegrand& f, std::size_t dim, std::span<const double> breaks,
                 const Options& opts) {
  if (breaks.size() < 2) throw Error(ErrorKind::DomainError, "quadrature needs at least two breakpoints");
  Integrator integ(f, dim);

  auto worse = [](const Panel* x, const Panel* y) {
    if (x->max_err != y->max_err) return x->max_err < y->max_err;
    return x->seq > y->seq;
  };
  std::vector<std::unique_ptr<Panel>> store;
  std::priority_queue<Panel*, std::vector<Panel*>, decltype(worse)> queue(worse);
  std::vector<double> total_err(dim, 0.0);
  std::size_t seq = 0;

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    auto p = std::make_unique<Panel>(integ.make_panel(a, b, integ.rule_on(a, b), seq++));
    for (std::size_t k = 0; k < dim; ++k) total_err[k] += p->err[k];
    queue.push(p.get());
    store.push_back(std::move(p));
  }
  int leaves = static_cast<int>(queue.size());

  auto converged = [&] {
    return std::all_of(total_err.begin(), total_err.end(), [&](double e) { return e <= opts.abs_tol; });
  };
  while (!queue.empty() && !converged()) {
    if (leaves + 1 > opts.max_panels)
      throw Error(ErrorKind::QuadratureNoConvergence,
                  "panel budget " + std::to_string(opts.max_panels) + " exhausted");
    Panel* worst = queue.top();
    queue.pop();
    // Stop refining a panel whose width underflows; its error stays in the total.
    const double m = 0.5 * (worst->a + worst->b);
    if (!(m > worst->a && m < worst->b)) continue;
    for (std::size_t k = 0; k < dim; ++k) total_err[k] -= worst->err[k];
    auto lo = std::make_unique<Panel>(integ.make_panel(worst->a, m, worst->left, seq++));
    auto hi = std::make_unique<Panel>(integ.make_panel(m, worst->b, worst->right, seq++));
    worst->fine.clear();
    worst->err.assign(dim, 0.0);
    worst->max_err = -1.0;
    for (std::size_t k = 0; k < dim; ++k) total_err[k] += lo->err[k] + hi->err[k];
    queue.push(lo.get());
    queue.push(hi.get());
    store.push_back(std::move(lo));
    store.push_back(std::move(hi));
    ++leaves;
  }
  if (!converged())
    throw Error(ErrorKind::QuadratureNoConvergence, "error estimate stalled above tolerance");

  // Sum leaves in creation order so the result does not depend on heap layout.
  Result res;
  res.value.assign(dim, 0.0);
  res.error = total_err;
  res.panels = leaves;
  for (const auto& p : store) {
    if (p->fine.empty()) continue;
    for (std::size_t k = 0; k < dim; ++k) res.value[k] += p->fine[k];
  }
  return res;
}

double integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 const Options& opts) {
  const VectorIntegrand vf = [&f](double x, std::span<double> out) { out[0] = f(x); };
  return integrate(vf, 1, breaks, opts).value[0];
}

}  // namespace spincorr::quad
