#include "spincorr/scan.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "spincorr/error.hpp"
#include "spincorr/heisenberg.hpp"
#include "spincorr/kernels.hpp"
#include "spincorr/measures.hpp"

namespace spincorr::scan {

std::string to_string(ModelKind m) { return m == ModelKind::XY ? "XY" : "HEISENBERG"; }

std::string to_string(Axis a) {
  switch (a) {
    case Axis::H: return "h";
    case Axis::T: return "T";
    case Axis::B: return "B";
    case Axis::R: return "R";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (count < 2) throw Error(ErrorKind::DomainError, "sweep needs at least two points");
  if (!(min < max)) throw Error(ErrorKind::DomainError, "sweep requires min < max");
  if (model == ModelKind::XY && axis == Axis::B)
    throw Error(ErrorKind::DomainError, "XY sweeps run over h, T or R");
  if (model == ModelKind::Heisenberg && (axis == Axis::H || axis == Axis::R))
    throw Error(ErrorKind::DomainError, "Heisenberg sweeps run over T or B");
  if (axis == Axis::T && min < 0.0) throw Error(ErrorKind::DomainError, "temperature sweep must start at T >= 0");
  if (axis == Axis::R) {
    if (min < 1.0 || max > xy::kMaxSeparation) throw Error(ErrorKind::DomainError, "R sweep must stay in [1, 400]");
    for (int i = 1; i < count; ++i)
      if (value_at(i) == value_at(i - 1)) throw Error(ErrorKind::DomainError, "R sweep grid repeats a separation");
  }
  if (model == ModelKind::XY && !(gamma >= 0.0 && gamma <= 1.0))
    throw Error(ErrorKind::DomainError, "gamma must lie in [0, 1]");
  if (model == ModelKind::Heisenberg && !(coupling > 0.0))
    throw Error(ErrorKind::DomainError, "Heisenberg coupling must be > 0");
  if (!(temperature >= 0.0)) throw Error(ErrorKind::DomainError, "temperature must be >= 0");
}

double SweepSpec::value_at(int i) const {
  const double x = i == count - 1 ? max : min + (max - min) * i / (count - 1);
  return axis == Axis::R ? std::round(x) : x;
}

bool ScanRow::has_flag(const std::string& f) const {
  std::size_t start = 0;
  while (start <= flags.size()) {
    const std::size_t end = std::min(flags.find(';', start), flags.size());
    if (flags.compare(start, end - start, f) == 0 && end - start == f.size()) return true;
    start = end + 1;
  }
  return false;
}

bool row_failed(const ScanRow& row) {
  return row.has_flag(flag::kQuadrature) || row.has_flag(flag::kInvalidState);
}

namespace {

void add_flag(ScanRow& row, const std::string& f) {
  if (row.has_flag(f)) return;
  if (!row.flags.empty()) row.flags += ';';
  row.flags += f;
}

void fill_measures(ScanRow& row, const DensityMatrix& rho) {
  const auto rep = measures::report(rho);
  row.concurrence = rep.concurrence;
  row.eof = rep.eof;
  row.discord = rep.discord;
  row.cc = rep.classical;
  row.mutual_info = rep.mutual_info;
  row.chsh = rep.chsh;
  row.argmin_alpha = rep.argmin.alpha;
  row.argmin_beta = rep.argmin.beta;
}

void record_failure(ScanRow& row, const Error& e) {
  if (e.kind() == ErrorKind::QuadratureNoConvergence)
    add_flag(row, flag::kQuadrature);
  else
    add_flag(row, flag::kInvalidState);
}

}  // namespace

ScanRow evaluate_xy(double gamma, double h, double temperature, xy::Separation r, bool small_temperature) {
  ScanRow row;
  row.model = to_string(ModelKind::XY);
  row.gamma = gamma;
  row.h = h;
  row.r = r;
  double t_eval = temperature;
  if (temperature == 0.0) {
    if (small_temperature) {
      t_eval = kSmallTemperature;
      add_flag(row, flag::kSmallT);
    } else {
      add_flag(row, flag::kZeroT);
    }
  }
  row.t = t_eval;
  try {
    const auto params = xy::XYParams::equilibrium_at(gamma, h, t_eval, r);
    const auto c = xy::evaluate_pair_correlators(params);
    if (!c.r_converged) add_flag(row, flag::kRLimit);
    row.mz = c.mz;
    row.txx = c.txx;
    row.tyy = c.tyy;
    row.tzz = c.tzz;
    fill_measures(row, xy::two_site_state(c));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError) throw;
    record_failure(row, e);
  }
  return row;
}

ScanRow evaluate_heisenberg(double coupling, double field, double temperature) {
  ScanRow row;
  row.model = to_string(ModelKind::Heisenberg);
  row.b = field;
  row.j = coupling;
  row.t = temperature;
  if (temperature == 0.0) add_flag(row, flag::kZeroT);
  try {
    const DensityMatrix rho = heisenberg::thermal_state({coupling, field, temperature});
    const Eigen::Matrix3d t = measures::correlation_matrix(rho);
    row.txx = t(0, 0);
    row.tyy = t(1, 1);
    row.tzz = t(2, 2);
    row.mz = 0.5 * (rho.matrix() * kron(pauli::z(), pauli::identity())).trace().real();
    fill_measures(row, rho);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError) throw;
    record_failure(row, e);
  }
  return row;
}

namespace {

ScanRow evaluate_point(const SweepSpec& spec, std::size_t i) {
  const double x = spec.value_at(static_cast<int>(i));
  if (spec.model == ModelKind::XY) {
    double h = spec.h;
    double t = spec.temperature;
    xy::Separation r = spec.separation;
    switch (spec.axis) {
      case Axis::H: h = x; break;
      case Axis::T: t = x; break;
      case Axis::R: r = xy::Separation::finite(static_cast<int>(x)); break;
      case Axis::B: break;
    }
    return evaluate_xy(spec.gamma, h, t, r, spec.small_temperature);
  }
  double b = spec.field;
  double t = spec.temperature;
  if (spec.axis == Axis::B) b = x;
  if (spec.axis == Axis::T) t = x;
  return evaluate_heisenberg(spec.coupling, b, t);
}

}  // namespace

Table sweep(const SweepSpec& spec) {
  spec.validate();
  return kernels::map_indexed_omp<ScanRow>(static_cast<std::size_t>(spec.count),
                                           [&](std::size_t i) { return evaluate_point(spec, i); });
}

Table sweep_serial(const SweepSpec& spec) {
  spec.validate();
  return kernels::map_indexed_serial<ScanRow>(static_cast<std::size_t>(spec.count),
                                              [&](std::size_t i) { return evaluate_point(spec, i); });
}

namespace {

// Signed Wootters margin of a real X-state: positive exactly when the
// concurrence is positive, and continuous across the boundary.
double concurrence_margin(double gamma, double h, xy::Separation r, double temperature) {
  const auto c = xy::evaluate_pair_correlators(xy::XYParams::equilibrium_at(gamma, h, temperature, r));
  const double d00 = 0.25 * (1.0 + 4.0 * c.mz + c.tzz);
  const double d11 = 0.25 * (1.0 - c.tzz);
  const double d33 = 0.25 * (1.0 - 4.0 * c.mz + c.tzz);
  const double off03 = 0.25 * std::abs(c.txx - c.tyy);
  const double off12 = 0.25 * std::abs(c.txx + c.tyy);
  return std::max(off03 - d11, off12 - std::sqrt(std::max(0.0, d00 * d33)));
}

double bisect_edge(double gamma, xy::Separation r, double temperature, double inside, double outside) {
  // `inside` has margin <= 0, `outside` has margin > 0.
  while (std::abs(outside - inside) > 1e-6) {
    const double mid = 0.5 * (inside + outside);
    if (concurrence_margin(gamma, mid, r, temperature) > 0.0)
      outside = mid;
    else
      inside = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

Region zero_entanglement_region(double gamma, xy::Separation r, double temperature) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorKind::DomainError, "region finder needs gamma in (0, 1)");
  if (!(temperature >= 0.0)) throw Error(ErrorKind::DomainError, "temperature must be >= 0");
  const double hf = xy::factorizing_field(gamma);
  Region out;
  if (temperature == 0.0) {
    out.kind = Region::Kind::Point;
    out.lo = out.hi = hf;
    return out;
  }
  const double lo = std::max(0.0, hf - 0.5);
  const double hi = std::min(2.0, hf + 0.8);
  auto margin = [&](double h) { return concurrence_margin(gamma, h, r, temperature); };

  // Seeds at 0.01 spacing over the bracket, with h_f inserted.
  constexpr double step = 0.01;
  std::vector<double> seeds;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int k = 0; k <= n; ++k) seeds.push_back(lo + step * k);
  if (seeds.back() < hi - 1e-12) seeds.push_back(hi);
  seeds.push_back(hf);
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              seeds.end());
  std::vector<double> m(seeds.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) m[k] = margin(seeds[k]);

  // Inside seed: the non-positive seed nearest h_f.
  std::optional<std::size_t> inside;
  for (std::size_t k = 0; k < seeds.size(); ++k)
    if (m[k] <= 0.0 && (!inside || std::abs(seeds[k] - hf) < std::abs(seeds[*inside] - hf))) inside = k;

  double in_h = hf;
  std::size_t left = 0;   // last positive seed below the window, if any
  std::size_t right = 0;  // first positive seed above it
  bool lo_found = false;
  bool hi_found = false;
  if (inside) {
    in_h = seeds[*inside];
    std::size_t a = *inside;
    while (a > 0 && m[a - 1] <= 0.0) --a;
    std::size_t b = *inside;
    while (b + 1 < seeds.size() && m[b + 1] <= 0.0) ++b;
    if (a > 0) {
      left = a - 1;
      lo_found = true;
    }
    if (b + 1 < seeds.size()) {
      right = b + 1;
      hi_found = true;
    }
    out.lo = lo_found ? bisect_edge(gamma, r, temperature, seeds[a], seeds[left]) : lo;
    out.hi = hi_found ? bisect_edge(gamma, r, temperature, seeds[b], seeds[right]) : hi;
  } else {
    // A window narrower than the seed spacing shows up as a margin dip.
    const std::size_t k = static_cast<std::size_t>(std::min_element(m.begin(), m.end()) - m.begin());
    const double a = seeds[k > 0 ? k - 1 : k];
    const double b = seeds[k + 1 < seeds.size() ? k + 1 : k];
    double x = 0.0;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double u = a;
    double v = b;
    while (v - u > 1e-9) {
      const double c = v - inv_phi * (v - u);
      const double d = u + inv_phi * (v - u);
      if (margin(c) <= margin(d))
        v = d;
      else
        u = c;
    }
    x = 0.5 * (u + v);
    if (margin(x) > 0.0) return out;  // NotFound
    in_h = x;
    lo_found = a < x;
    hi_found = b > x;
    out.lo = lo_found ? bisect_edge(gamma, r, temperature, in_h, a) : in_h;
    out.hi = hi_found ? bisect_edge(gamma, r, temperature, in_h, b) : in_h;
  }
  out.kind = Region::Kind::Interval;
  out.lo_open = !lo_found;
  out.hi_open = !hi_found;
  return out;
}

}  // namespace spincorr::scan
