// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// usage: acceptance <path-to-spincorr-cli> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spincorr/ed_oracle.hpp"
#include "spincorr/heisenberg.hpp"
#include "spincorr/measures.hpp"
#include "spincorr/scan.hpp"
#include "spincorr/xy_correlators.hpp"

using namespace spincorr;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    ok = ok && cond;
    notes.push_back(std::string(cond ? "[ok]   " : "[fail] ") + what);
  }
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void run(int id, const std::string& title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < budget_s, fmt("runtime %.1f s (budget %.0f s)", secs, budget_s));
  if (!c.ok) ++failures;
  std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", id, title.c_str());
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

xy::Separation sep(int r) { return xy::Separation::finite(r); }

DensityMatrix xy_state(double gamma, double h, double t, int r) {
  return xy::two_site_state(xy::XYParams::equilibrium_at(gamma, h, t, sep(r)));
}

double bisect(const std::function<bool(double)>& above, double lo, double hi, double tol) {
  // above(lo) is false, above(hi) is true.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// --- 1 -------------------------------------------------------------------

void analytic_anchors(Check& c) {
  for (double g : {0.3, 0.5, 0.8}) {
    const double hf = xy::factorizing_field(g);
    const double conc = measures::concurrence(xy_state(g, hf, 0.0, 1));
    c.expect(conc < 1e-6, fmt("gamma=%.1f: C(h_f=%.6f) = %.3e", g, hf, conc));
  }
  const double tc = 8.0 / std::log(3.0);
  for (double b : {0.0, 1.0, 8.0}) {
    const double t = bisect(
        [&](double temp) { return measures::concurrence(heisenberg::thermal_state({1.0, b, temp})) == 0.0; }, 1.0,
        20.0, 1e-12);
    c.expect(std::abs(t - tc) <= 1e-6, fmt("B=%.0f: concurrence zero crossing T=%.9f vs 8/ln3=%.9f", b, t, tc));
  }
  // Ground-level crossing: the |11> weight of the lowest eigenvector jumps at B_c.
  const double bc = bisect(
      [](double b) {
        const Spectrum s = eig_hermitian(heisenberg::hamiltonian(1.0, b));
        return std::norm(s.vectors(3, 3)) > 0.5;
      },
      0.0, 10.0, 1e-13);
  c.expect(std::abs(bc - 4.0) <= 1e-9, fmt("ground-level crossing B=%.12f (expected 4)", bc));
}

// --- 2 -------------------------------------------------------------------

void dual_methods(Check& c) {
  double worst_c = 0.0;
  double worst_rho = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const heisenberg::HeisenbergParams p{1.0, 10.0 * i / 19.0, 0.1 + 9.9 * j / 19.0};
      const auto rho = heisenberg::thermal_state(p);
      worst_c = std::max(worst_c, std::abs(heisenberg::concurrence_closed(p) - measures::concurrence(rho)));
      worst_rho = std::max(
          worst_rho, (rho.matrix() - heisenberg::thermal_state_spectral(p).matrix()).cwiseAbs().maxCoeff());
    }
  c.expect(worst_c <= 1e-12, fmt("(a) closed-form vs Wootters concurrence, 20x20 grid: max diff %.2e", worst_c));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_d = 0.0;
  for (int n = 0; n < 100; ++n) {
    const DensityMatrix rho = n < 50 ? xy_state(u(rng), 2.0 * u(rng), u(rng) < 0.2 ? 0.0 : 2.0 * u(rng),
                                                1 + static_cast<int>(4 * u(rng)))
                                     : heisenberg::thermal_state({1.0, 10.0 * u(rng), 0.05 + 9.95 * u(rng)});
    worst_d = std::max(worst_d, std::abs(measures::discord_xstate(rho) - measures::discord_numeric(rho).discord));
  }
  c.expect(worst_d <= 1e-6, fmt("(b) closed-form vs numeric discord, 100 model states: max diff %.2e", worst_d));
  c.expect(worst_rho <= 1e-12, fmt("(c) spectral vs explicit thermal state, 20x20 grid: max diff %.2e", worst_rho));
}

// --- 3 -------------------------------------------------------------------

void magnetization(Check& c) {
  for (double h : {0.25, 0.5, 2.0, 5.0}) {
    const double q = xy::magnetization(h, 1.0, 0.0);
    const double e = xy::magnetization_ising_exact(h);
    c.expect(std::abs(q - e) <= 1e-8, fmt("h=%.2f: quadrature %.12f, closed form %.12f", h, q, e));
  }
  auto deriv = [](double h) {
    const double d = 1e-2 * std::abs(h - 1.0);
    return (xy::magnetization_ising_exact(h + d) - xy::magnetization_ising_exact(h - d)) / (2.0 * d);
  };
  for (double side : {-1.0, 1.0}) {
    std::vector<double> d;
    for (int k = 2; k <= 5; ++k) d.push_back(deriv(1.0 + side * std::pow(10.0, -k)));
    bool mono = true;
    for (std::size_t k = 1; k < d.size(); ++k) mono = mono && d[k] > d[k - 1];
    bool ratio = true;
    std::string inc;
    for (std::size_t k = 1; k + 1 < d.size(); ++k) {
      const double r = (d[k + 1] - d[k]) / (d[k] - d[k - 1]);
      ratio = ratio && r >= 0.75 && r <= 1.25;
      inc += fmt(" %.4f", r);
    }
    c.expect(mono, fmt("h=1%+.0fe-k: dM/dh = %.5f .. %.5f, increasing in k", side, d.front(), d.back()));
    c.expect(ratio, "  per-decade increment ratios within 25%:" + inc);
  }
}

// --- 4 -------------------------------------------------------------------

void ed_agreement(Check& c) {
  for (double h : {0.3, 0.8, 1.5})
    for (int r : {1, 2}) {
      const auto q = xy::pair_correlators(xy::XYParams::equilibrium_at(0.5, h, 1.0, sep(r)));
      auto gap = [&](int n) {
        ed::FiniteChainSpec s;
        s.sites = n;
        s.model = ed::Model::XY;
        s.gamma = 0.5;
        s.h = h;
        s.temperature = 1.0;
        const auto e = ed::oracle_correlators(s, r);
        return std::max({std::abs(e.mz - q.mz), std::abs(e.txx - q.txx), std::abs(e.tyy - q.tyy),
                         std::abs(e.tzz - q.tzz)});
      };
      const double g12 = gap(12);
      const double g8 = gap(8);
      c.expect(g12 <= 2e-2 && g12 < g8,
               fmt("h=%.1f R=%.0f: max |ring - chain| N=12 %.2e", h, r, g12) + fmt(", N=8 %.2e", g8));
    }
}

// --- 5 -------------------------------------------------------------------

scan::SweepSpec h_sweep(int count, double t, xy::Separation r) {
  scan::SweepSpec s;
  s.axis = scan::Axis::H;
  s.min = 0.0;
  s.max = 2.0;
  s.count = count;
  s.gamma = 0.5;
  s.temperature = t;
  s.separation = r;
  return s;
}

scan::Table t_sweep(double b) {
  scan::SweepSpec s;
  s.model = scan::ModelKind::Heisenberg;
  s.axis = scan::Axis::T;
  s.min = 0.05;
  s.max = 10.0;
  s.count = 201;
  s.coupling = 1.0;
  s.field = b;
  return scan::sweep(s);
}

std::size_t argmax(const scan::Table& t, std::optional<double> scan::ScanRow::*f) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (*(t[i].*f) > *(t[k].*f)) k = i;
  return k;
}

bool non_increasing(const scan::Table& t, std::optional<double> scan::ScanRow::*f) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (*(t[i].*f) > *(t[i - 1].*f) + 1e-12) return false;
  return true;
}

void figure_properties(Check& c) {
  using scan::ScanRow;
  const double hf = xy::factorizing_field(0.5);

  // Fig. 1
  const auto f1 = scan::sweep(h_sweep(201, 0.0, sep(1)));
  int below = 0;
  double worst = 0.0;
  double worst_h = 0.0;
  for (const auto& r : f1)
    if (*r.discord < *r.eof) {
      ++below;
      if (*r.eof - *r.discord > worst) {
        worst = *r.eof - *r.discord;
        worst_h = *r.h;
      }
    }
  c.expect(below == 0, fmt("Fig1: discord >= EoF at T=0 on %.0f/201 points (largest deficit %.4f at h=%.2f)",
                           201.0 - below, worst, worst_h));
  const double hmax = *f1[argmax(f1, &ScanRow::discord)].h;
  c.expect(std::abs(hmax - hf) <= 0.05, fmt("Fig1: discord maximum at h=%.3f, h_f=%.4f", hmax, hf));

  // Fig. 2
  std::vector<scan::Table> f2;
  for (int r : {1, 2, 3}) f2.push_back(scan::sweep(h_sweep(50, 0.0, sep(r))));
  int order_viol = 0;
  std::string first_viol;
  for (std::size_t i = 0; i < f2[0].size(); ++i) {
    const double d1 = *f2[0][i].discord;
    const double d2 = *f2[1][i].discord;
    const double d3 = *f2[2][i].discord;
    if (d1 < d2 - 1e-6 || d2 < d3 - 1e-6) {
      ++order_viol;
      if (first_viol.empty()) first_viol = fmt(" (e.g. h=%.4f: %.5f, %.5f", *f2[0][i].h, d1, d2) + fmt(", %.5f)", d3);
    }
  }
  c.expect(order_viol == 0, fmt("Fig2: discord(R=1) >= (R=2) >= (R=3) violated at %.0f of 50 points", order_viol) +
                                first_viol);
  const auto inf_hi = scan::evaluate_xy(0.5, 1.5, 0.0, xy::Separation::infinite());
  const auto inf_lo = scan::evaluate_xy(0.5, 0.5, 0.0, xy::Separation::infinite());
  c.expect(*inf_hi.discord < 1e-3, fmt("Fig2: discord(R=inf, h=1.5) = %.3e < 1e-3", *inf_hi.discord));
  c.expect(*inf_lo.discord > 1e-3, fmt("Fig2: discord(R=inf, h=0.5) = %.4f > 1e-3", *inf_lo.discord));

  // Fig. 3
  double prev_w = -1.0;
  bool grows = true;
  std::string widths;
  for (double t : {0.01, 0.1, 0.3}) {
    const auto reg = scan::zero_entanglement_region(0.5, sep(1), t);
    const double w = reg.kind == scan::Region::Kind::Interval ? reg.hi - reg.lo : -1.0;
    grows = grows && w >= prev_w && w >= 0.0;
    prev_w = w;
    widths += fmt(" T=%.2f:[%.4f,%.4f]", t, reg.lo, reg.hi);
  }
  c.expect(grows, "Fig3: null-concurrence window widens with T:" + widths);
  const auto reg3 = scan::zero_entanglement_region(0.5, sep(1), 0.3);
  const auto f3 = scan::sweep(h_sweep(201, 0.3, sep(1)));
  const double h3 = *f3[argmax(f3, &ScanRow::discord)].h;
  c.expect(reg3.kind == scan::Region::Kind::Interval && h3 >= reg3.lo && h3 <= reg3.hi,
           fmt("Fig3: T=0.3 discord maximum at h=%.3f inside [%.4f, %.4f]", h3, reg3.lo, reg3.hi));

  // Fig. 4
  const auto b1 = t_sweep(1.0);
  c.expect(non_increasing(b1, &ScanRow::concurrence) && non_increasing(b1, &ScanRow::discord) &&
               non_increasing(b1, &ScanRow::cc),
           "Fig4 B=1: concurrence, discord and CC non-increasing in T");
  const auto b8 = t_sweep(8.0);
  const std::size_t k8 = argmax(b8, &ScanRow::concurrence);
  std::size_t death = b8.size();
  for (std::size_t i = k8; i < b8.size(); ++i)
    if (*b8[i].concurrence == 0.0) {
      death = i;
      break;
    }
  c.expect(k8 > 0 && k8 + 1 < b8.size() && *b8.front().concurrence <= 1e-12 && *b8.back().concurrence == 0.0,
           fmt("Fig4 B=8: interior concurrence maximum %.4f at T=%.3f, C(T=0.05)=%.1e", *b8[k8].concurrence,
               *b8[k8].t, *b8.front().concurrence));
  c.expect(death < b8.size() && *b8[death].discord > 0.0 && *b8[death].cc > 0.0,
           fmt("Fig4 B=8: concurrence reaches 0 at T=%.3f with discord %.4f > 0", *b8[std::min(death, b8.size() - 1)].t,
               *b8[std::min(death, b8.size() - 1)].discord));
  const auto b25 = t_sweep(25.0);
  const double emax = *b25[argmax(b25, &ScanRow::eof)].eof;
  const double dmax = *b25[argmax(b25, &ScanRow::discord)].discord;
  c.expect(emax < 1e-3 && dmax > 1e-3 && dmax > 10.0 * emax,
           fmt("Fig4 B=25: max EoF %.2e < 1e-3 while max discord %.2e > 1e-3", emax, dmax));
}

// --- 6 -------------------------------------------------------------------

Mat2 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(n(rng), n(rng));
  return Eigen::HouseholderQR<Mat2>(g).householderQ();
}

DensityMatrix random_state(std::mt19937_64& rng, int rank) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cplx(n(rng), n(rng));
  Mat4 m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

void measure_properties(Check& c) {
  std::mt19937_64 rng(6);
  double split = 0.0;
  double min_d = 0.0;
  double min_cc = 0.0;
  double max_chsh = 0.0;
  double pure = 0.0;
  double lu = 0.0;
  for (int n = 0; n < 500; ++n) {
    const int rank = 1 + n % 4;
    const auto rho = random_state(rng, rank);
    const auto r = measures::report(rho);
    split = std::max(split, std::abs(r.mutual_info - r.discord - r.classical));
    min_d = std::min(min_d, r.discord);
    min_cc = std::min(min_cc, r.classical);
    max_chsh = std::max(max_chsh, r.chsh);
    if (rank == 1)
      pure = std::max(pure, std::abs(r.discord - von_neumann_entropy(partial_trace(rho, Subsystem::A))));
    if (n % 5 == 0) {
      const Mat4 u = kron(random_unitary(rng), random_unitary(rng));
      Mat4 m = u * rho.matrix() * u.adjoint();
      const auto r2 = measures::report(DensityMatrix(0.5 * (m + m.adjoint())));
      lu = std::max({lu, std::abs(r.discord - r2.discord), std::abs(r.concurrence - r2.concurrence),
                     std::abs(r.eof - r2.eof), std::abs(r.mutual_info - r2.mutual_info),
                     std::abs(r.chsh - r2.chsh)});
    }
  }
  c.expect(split <= 1e-8, fmt("M_q = discord + CC: max residual %.2e", split));
  c.expect(min_d >= 0.0 && min_cc >= 0.0, fmt("discord >= 0 (min %.2e), CC >= 0 (min %.2e)", min_d, min_cc));
  c.expect(pure <= 1e-8, fmt("pure states: |discord - S(rho_A)| max %.2e", pure));
  c.expect(lu <= 1e-7, fmt("local-unitary invariance: max change %.2e", lu));
  c.expect(max_chsh <= 2.0 * std::sqrt(2.0) + 1e-12, fmt("CHSH <= 2 sqrt2: max %.6f", max_chsh));
}

// --- 7 -------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void interface(Check& c, const std::string& cli, const std::filesystem::path& scratch) {
  const auto a = scratch / "threads1";
  const auto b = scratch / "threads3";
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
  const int ra = std::system(("\"" + cli + "\" --threads 1 figures --out \"" + a.string() + "\"").c_str());
  const int rb = std::system(("\"" + cli + "\" --threads 3 figures --out \"" + b.string() + "\"").c_str());
  c.expect(ra == 0 && rb == 0, fmt("figures exit status %.0f (1 thread) and %.0f (3 threads)", ra, rb));
  for (const char* f : {"fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv", "fig3_region.csv"}) {
    const auto x = slurp(a / f);
    const auto y = slurp(b / f);
    c.expect(!x.empty() && x == y, std::string(f) + fmt(": %.0f bytes, identical across thread counts",
                                                         static_cast<double>(x.size())));
  }
  for (const char* f : {"fig1.svg", "fig2_discord.svg", "fig3_eof.svg", "fig4_c.svg"})
    c.expect(std::filesystem::exists(a / f), std::string(f) + " written");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <spincorr-cli> <scratch-dir>\n");
    return 1;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch = argv[2];
  std::filesystem::create_directories(scratch);

  run(1, "analytic anchors (factorizing field, T_c, B_c)", 10, analytic_anchors);
  run(2, "dual-method equalities", 120, dual_methods);
  run(3, "elliptic-integral magnetization and log-divergent susceptibility", 30, magnetization);
  run(4, "exact-diagonalization agreement at N = 12", 300, ed_agreement);
  run(5, "figure-level properties", 180, figure_properties);
  run(6, "measure-theory property suite", 120, measure_properties);
  run(7, "figures subcommand, deterministic across thread counts", 600,
      [&](Check& c) { interface(c, cli, scratch); });
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
