#include "spincorr/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "spincorr/ed_oracle.hpp"
#include "spincorr/error.hpp"
#include "spincorr/heisenberg.hpp"
#include "spincorr/kernels.hpp"
#include "spincorr/measures.hpp"
#include "spincorr/scan.hpp"

namespace spincorr {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::QuadratureNoConvergence:
    case ErrorKind::RLimitNotConverged:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

void print(const char* label, double v) { std::printf("%-14s %.12g\n", label, v); }

int apply_threads(int threads) {
  if (threads < 1) {
    if (const char* env = std::getenv("SPINCORR_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1)
        throw Error(ErrorKind::UsageError, "SPINCORR_THREADS must be a positive integer");
      threads = static_cast<int>(v);
    }
  }
  kernels::set_threads(threads);
  return threads;
}

int finish_table(const scan::Table& table, const std::string& out, const std::string& svg,
                 const std::string& x_column, const std::vector<std::string>& columns) {
  if (out.empty())
    std::cout << scan::to_csv(table);
  else
    scan::emit_csv(table, out);
  if (!svg.empty()) scan::emit_svg(table, x_column, columns, svg);
  int failed = 0;
  for (const auto& row : table) failed += scan::row_failed(row) ? 1 : 0;
  if (failed > 0) {
    std::cerr << failed << " row(s) failed to converge\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Thermal quantum correlations of two spins in the XY chain and the Heisenberg pair"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (falls back to SPINCORR_THREADS)");

  double gamma = 0.5;
  double h = 0.0;
  double temp = 0.0;
  std::string r_text = "1";
  double j = 1.0;
  double b = 0.0;
  double lo = NAN;
  double hi = NAN;
  int points = 201;
  std::string out;
  std::string svg;
  std::string axis;
  bool small_t = false;
  std::string model = "xy";
  int sites = 12;

  auto add_xy = [&](CLI::App* sc) {
    sc->add_option("--gamma", gamma, "anisotropy in [0, 1]");
    sc->add_option("--temp", temp, "temperature (k = 1); 0 is the ground-state limit");
    sc->add_option("--r", r_text, "separation: positive integer or inf");
  };

  auto* xs = app.add_subcommand("xy-sweep", "sweep the XY chain over h, T or R");
  add_xy(xs);
  xs->add_option("--h", h, "fixed field when sweeping another axis");
  xs->add_option("--axis", axis, "h (default), T or R")->check(CLI::IsMember({"h", "T", "R"}));
  xs->add_option("--h-min,--min", lo, "lower end of the swept axis");
  xs->add_option("--h-max,--max", hi, "upper end of the swept axis");
  xs->add_option("--points", points, "grid points (>= 2)");
  xs->add_flag("--small-t", small_t, "evaluate T = 0 at T = 1e-3 (flagged)");
  xs->add_option("--out", out, "CSV path (stdout if omitted)");
  xs->add_option("--svg", svg, "SVG path");

  auto* hs = app.add_subcommand("heisenberg-sweep", "sweep the Heisenberg pair over T or B");
  hs->add_option("--j", j, "coupling J > 0");
  hs->add_option("--b", b, "fixed field when sweeping T");
  hs->add_option("--temp", temp, "fixed temperature when sweeping B");
  hs->add_option("--axis", axis, "T (default) or B")->check(CLI::IsMember({"T", "B"}));
  hs->add_option("--t-min,--min", lo, "lower end of the swept axis");
  hs->add_option("--t-max,--max", hi, "upper end of the swept axis");
  hs->add_option("--points", points, "grid points (>= 2)");
  hs->add_option("--out", out, "CSV path (stdout if omitted)");
  hs->add_option("--svg", svg, "SVG path");

  auto* rg = app.add_subcommand("region", "zero-concurrence field window around the factorizing field");
  add_xy(rg);

  auto* cr = app.add_subcommand("correlators", "two-site correlators of the XY chain");
  add_xy(cr);
  cr->add_option("--h", h, "transverse field");

  auto* dc = app.add_subcommand("discord", "all correlation measures for one state");
  add_xy(dc);
  dc->add_option("--h", h, "transverse field (XY)");
  dc->add_option("--model", model, "xy (default) or heisenberg")->check(CLI::IsMember({"xy", "heisenberg"}));
  dc->add_option("--j", j, "Heisenberg coupling");
  dc->add_option("--b", b, "Heisenberg field");

  auto* oc = app.add_subcommand("oracle", "finite-ring exact diagonalization against the chain integrals");
  add_xy(oc);
  oc->add_option("--h", h, "transverse field");
  oc->add_option("--n", sites, "ring size (2..12)");

  auto* fg = app.add_subcommand("figures", "regenerate the four figure datasets and SVG panels");
  fg->add_option("--out", out, "output directory")->required();
  fg->add_option("--points", points, "grid points per curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    apply_threads(threads);

    if (*xs) {
      scan::SweepSpec spec;
      spec.model = scan::ModelKind::XY;
      spec.axis = axis == "T" ? scan::Axis::T : axis == "R" ? scan::Axis::R : scan::Axis::H;
      spec.gamma = gamma;
      spec.h = h;
      spec.temperature = temp;
      spec.separation = xy::Separation::parse(r_text);
      spec.count = points;
      spec.small_temperature = small_t;
      spec.min = std::isnan(lo) ? (spec.axis == scan::Axis::H ? 0.0 : spec.axis == scan::Axis::T ? 0.0 : 1.0) : lo;
      spec.max = std::isnan(hi) ? (spec.axis == scan::Axis::H ? 2.0 : spec.axis == scan::Axis::T ? 1.0 : 10.0) : hi;
      const std::string x = spec.axis == scan::Axis::H ? "h" : spec.axis == scan::Axis::T ? "T" : "R";
      return finish_table(scan::sweep(spec), out, svg, x, {"discord", "cc", "eof"});
    }
    if (*hs) {
      scan::SweepSpec spec;
      spec.model = scan::ModelKind::Heisenberg;
      spec.axis = axis == "B" ? scan::Axis::B : scan::Axis::T;
      spec.coupling = j;
      spec.field = b;
      spec.temperature = temp;
      spec.count = points;
      spec.min = std::isnan(lo) ? (spec.axis == scan::Axis::T ? 0.05 : 0.0) : lo;
      spec.max = std::isnan(hi) ? 10.0 : hi;
      return finish_table(scan::sweep(spec), out, svg, spec.axis == scan::Axis::T ? "T" : "B",
                          {"concurrence", "discord", "cc"});
    }
    if (*rg) {
      const auto sep = xy::Separation::parse(r_text);
      const auto region = scan::zero_entanglement_region(gamma, sep, temp);
      switch (region.kind) {
        case scan::Region::Kind::Point:
          std::printf("h_f = %.6f\n", region.lo);
          break;
        case scan::Region::Kind::Interval:
          std::printf("null concurrence for h in %c%.6f, %.6f%c (h_f = %.6f)\n", region.lo_open ? '(' : '[',
                      region.lo, region.hi, region.hi_open ? ')' : ']', xy::factorizing_field(gamma));
          break;
        case scan::Region::Kind::NotFound:
          std::printf("concurrence positive across the scan bracket; no null window\n");
          break;
      }
      return kExitOk;
    }
    if (*cr) {
      const auto c = xy::pair_correlators(xy::XYParams::equilibrium_at(gamma, h, temp, xy::Separation::parse(r_text)));
      print("mz", c.mz);
      print("txx", c.txx);
      print("tyy", c.tyy);
      print("tzz", c.tzz);
      if (c.separation.is_infinite()) std::printf("%-14s %d\n", "R_evaluated", c.r_evaluated);
      return kExitOk;
    }
    if (*dc) {
      const DensityMatrix rho =
          model == "heisenberg"
              ? heisenberg::thermal_state({j, b, temp})
              : xy::two_site_state(xy::XYParams::equilibrium_at(gamma, h, temp, xy::Separation::parse(r_text)));
      const auto rep = measures::report(rho);
      print("discord", rep.discord);
      print("cc", rep.classical);
      print("mutual_info", rep.mutual_info);
      print("concurrence", rep.concurrence);
      print("eof", rep.eof);
      print("chsh", rep.chsh);
      print("argmin_alpha", rep.argmin.alpha);
      print("sin_alpha", std::sin(rep.argmin.alpha));
      print("argmin_beta", rep.argmin.beta);
      return kExitOk;
    }
    if (*oc) {
      const auto sep = xy::Separation::parse(r_text);
      if (sep.is_infinite()) throw Error(ErrorKind::DomainError, "the finite ring needs a finite --r");
      ed::FiniteChainSpec spec;
      spec.sites = sites;
      spec.model = ed::Model::XY;
      spec.gamma = gamma;
      spec.h = h;
      spec.temperature = temp;
      const auto e = ed::oracle_correlators(spec, sep.value());
      const auto q = xy::pair_correlators(xy::XYParams::equilibrium_at(gamma, h, temp, sep));
      std::printf("%-6s %16s %16s %12s\n", "", "ring", "chain", "|diff|");
      auto row = [](const char* n, double a, double c) {
        std::printf("%-6s %16.10f %16.10f %12.3e\n", n, a, c, std::abs(a - c));
      };
      row("mz", e.mz, q.mz);
      row("txx", e.txx, q.txx);
      row("tyy", e.tyy, q.tyy);
      row("tzz", e.tzz, q.tzz);
      return kExitOk;
    }
    if (*fg) {
      scan::FigureOptions opts;
      opts.points = points;
      const int failed = scan::write_figures(out, opts);
      if (failed > 0) {
        std::cerr << failed << " row(s) failed to converge\n";
        return kExitNumeric;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    if (e.kind() == ErrorKind::UsageError) std::cerr << app.help();
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace spincorr
