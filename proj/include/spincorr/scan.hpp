#pragma once

// Parameter sweeps over the XY chain and the Heisenberg pair, the
// zero-entanglement window finder, and the flat-file writers.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spincorr/xy_correlators.hpp"

namespace spincorr::scan {

enum class ModelKind { XY, Heisenberg };
enum class Axis { H, T, B, R };

std::string to_string(ModelKind m);
std::string to_string(Axis a);

struct SweepSpec {
  ModelKind model = ModelKind::XY;
  Axis axis = Axis::H;
  double min = 0.0;
  double max = 2.0;
  int count = 201;

  // Fixed parameters; the swept one is overwritten per row.
  double gamma = 0.5;
  double h = 0.0;
  double temperature = 0.0;
  xy::Separation separation = xy::Separation::finite(1);
  double coupling = 1.0;
  double field = 0.0;

  /// Evaluate T == 0 requests at kSmallTemperature instead of the tagged
  /// limit; such rows carry the "small_T" flag.
  bool small_temperature = false;

  void validate() const;
  double value_at(int i) const;
};

inline constexpr double kSmallTemperature = 1e-3;

/// One CSV row. Empty optionals are written as empty fields.
struct ScanRow {
  std::string model;
  std::optional<double> gamma, h, b, j;
  std::optional<double> t;
  std::optional<xy::Separation> r;
  std::optional<double> mz, txx, tyy, tzz;
  std::optional<double> concurrence, eof, discord, cc, mutual_info, chsh;
  std::optional<double> argmin_alpha, argmin_beta;
  std::string flags;  // ';'-separated

  bool has_flag(const std::string& f) const;
  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

using Table = std::vector<ScanRow>;

/// Row flags. "T0": tagged zero-temperature limit; "small_T": T == 0 request
/// evaluated at 1e-3; "r_limit": infinite separation not settled by R = 400
/// (values are those at R = 400); the rest mark rows without measures.
namespace flag {
inline const std::string kZeroT = "T0";
inline const std::string kSmallT = "small_T";
inline const std::string kRLimit = "r_limit";
inline const std::string kQuadrature = "quadrature_no_convergence";
inline const std::string kInvalidState = "invalid_state";
}  // namespace flag

/// True when the row lacks its measures because a computation failed.
bool row_failed(const ScanRow& row);

ScanRow evaluate_xy(double gamma, double h, double temperature, xy::Separation r, bool small_temperature = false);
ScanRow evaluate_heisenberg(double coupling, double field, double temperature);

/// Rows ordered by the swept axis, independent of thread count.
Table sweep(const SweepSpec& spec);
Table sweep_serial(const SweepSpec& spec);

struct Region {
  enum class Kind { Point, Interval, NotFound };
  Kind kind = Kind::NotFound;
  double lo = 0.0;
  double hi = 0.0;
  /// An edge that reached the scan bracket instead of a sign change.
  bool lo_open = false;
  bool hi_open = false;
};

/// Field window with zero concurrence nearest h_f = sqrt(1 - g^2). Seeds
/// on [max(0, h_f - 0.5), min(2, h_f + 0.8)] at 0.01 spacing (plus h_f),
/// falls back to a golden-section dip search when the window is narrower
/// than a seed step, then bisects each edge to 1e-6. T == 0 gives the
/// point h_f. At T > 0 the window drifts below h_f and need not contain it.
Region zero_entanglement_region(double gamma, xy::Separation r, double temperature);

// CSV ---------------------------------------------------------------------

extern const char* const kCsvHeader;

std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);
void emit_csv(const Table& table, const std::filesystem::path& path);
Table read_csv(const std::filesystem::path& path);

// SVG ---------------------------------------------------------------------

struct Series {
  std::string label;
  Table rows;
};

/// One polyline per requested column against `x_column`. A single-row table
/// draws a marker. Throws EmptyTable or UnknownColumn.
void emit_svg(const Table& table, const std::string& x_column, const std::vector<std::string>& columns,
              const std::filesystem::path& path, const std::string& title = "");

/// Several labelled series on shared axes, one polyline per (series, column).
void emit_svg(const std::vector<Series>& series, const std::string& x_column,
              const std::vector<std::string>& columns, const std::filesystem::path& path,
              const std::string& title = "");

std::string render_svg(const std::vector<Series>& series, const std::string& x_column,
                       const std::vector<std::string>& columns, const std::string& title);

/// Numeric value of a named CSV column, if present in the row.
std::optional<double> column_value(const ScanRow& row, const std::string& column);

// Figure datasets ---------------------------------------------------------

struct FigureOptions {
  int points = 201;
};

/// Writes fig1.csv ... fig4.csv, fig3_region.csv and the SVG panels into
/// `dir`. Returns the number of rows whose computation failed.
int write_figures(const std::filesystem::path& dir, const FigureOptions& opts = {});

}  // namespace spincorr::scan
