#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "spincorr/error.hpp"
#include "spincorr/scan.hpp"

namespace spincorr::scan {

const char* const kCsvHeader =
    "model,gamma,h,B,J,T,R,mz,txx,tyy,tzz,concurrence,eof,discord,cc,mutual_info,chsh,argmin_alpha,argmin_beta,flags";

namespace {

constexpr std::array<const char*, 20> kColumns{
    "model", "gamma", "h", "B", "J", "T", "R", "mz", "txx", "tyy", "tzz", "concurrence", "eof", "discord",
    "cc", "mutual_info", "chsh", "argmin_alpha", "argmin_beta", "flags"};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    out.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::optional<double> parse_number(const std::string& field, std::size_t line_no) {
  if (field.empty()) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size())
    throw Error(ErrorKind::UsageError, "CSV line " + std::to_string(line_no) + ": bad number '" + field + "'");
  return v;
}

// Pointer-to-member table for the numeric columns, in CSV order.
using Field = std::optional<double> ScanRow::*;
const std::array<std::pair<const char*, Field>, 17>& numeric_fields() {
  static const std::array<std::pair<const char*, Field>, 17> table{{
      {"gamma", &ScanRow::gamma},
      {"h", &ScanRow::h},
      {"B", &ScanRow::b},
      {"J", &ScanRow::j},
      {"T", &ScanRow::t},
      {"mz", &ScanRow::mz},
      {"txx", &ScanRow::txx},
      {"tyy", &ScanRow::tyy},
      {"tzz", &ScanRow::tzz},
      {"concurrence", &ScanRow::concurrence},
      {"eof", &ScanRow::eof},
      {"discord", &ScanRow::discord},
      {"cc", &ScanRow::cc},
      {"mutual_info", &ScanRow::mutual_info},
      {"chsh", &ScanRow::chsh},
      {"argmin_alpha", &ScanRow::argmin_alpha},
      {"argmin_beta", &ScanRow::argmin_beta},
  }};
  return table;
}

}  // namespace

std::optional<double> column_value(const ScanRow& row, const std::string& column) {
  if (column == "R") {
    if (!row.r) return std::nullopt;
    if (row.r->is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(row.r->value());
  }
  for (const auto& [name, field] : numeric_fields())
    if (column == name) return row.*field;
  throw Error(ErrorKind::UnknownColumn, "no numeric column '" + column + "'");
}

std::string to_csv(const Table& table) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& row : table) {
    out += row.model;
    const auto add = [&](const std::string& s) {
      out += ',';
      out += s;
    };
    add(fmt(row.gamma));
    add(fmt(row.h));
    add(fmt(row.b));
    add(fmt(row.j));
    add(fmt(row.t));
    add(row.r ? row.r->to_string() : std::string());
    add(fmt(row.mz));
    add(fmt(row.txx));
    add(fmt(row.tyy));
    add(fmt(row.tzz));
    add(fmt(row.concurrence));
    add(fmt(row.eof));
    add(fmt(row.discord));
    add(fmt(row.cc));
    add(fmt(row.mutual_info));
    add(fmt(row.chsh));
    add(fmt(row.argmin_alpha));
    add(fmt(row.argmin_beta));
    add(row.flags);
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorKind::UsageError, "CSV header mismatch");
  Table table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != kColumns.size())
      throw Error(ErrorKind::UsageError, "CSV line " + std::to_string(line_no) + ": expected 20 fields");
    ScanRow row;
    row.model = f[0];
    row.gamma = parse_number(f[1], line_no);
    row.h = parse_number(f[2], line_no);
    row.b = parse_number(f[3], line_no);
    row.j = parse_number(f[4], line_no);
    row.t = parse_number(f[5], line_no);
    if (!f[6].empty()) row.r = xy::Separation::parse(f[6]);
    row.mz = parse_number(f[7], line_no);
    row.txx = parse_number(f[8], line_no);
    row.tyy = parse_number(f[9], line_no);
    row.tzz = parse_number(f[10], line_no);
    row.concurrence = parse_number(f[11], line_no);
    row.eof = parse_number(f[12], line_no);
    row.discord = parse_number(f[13], line_no);
    row.cc = parse_number(f[14], line_no);
    row.mutual_info = parse_number(f[15], line_no);
    row.chsh = parse_number(f[16], line_no);
    row.argmin_alpha = parse_number(f[17], line_no);
    row.argmin_beta = parse_number(f[18], line_no);
    row.flags = f[19];
    table.push_back(std::move(row));
  }
  return table;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace

void emit_csv(const Table& table, const std::filesystem::path& path) { write_text(path, to_csv(table)); }

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

// SVG ---------------------------------------------------------------------

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(const std::vector<Series>& series, const std::string& x_column,
                       const std::vector<std::string>& columns, const std::string& title) {
  bool any_row = false;
  for (const auto& s : series) any_row = any_row || !s.rows.empty();
  if (!any_row) throw Error(ErrorKind::EmptyTable, "nothing to plot");
  if (columns.empty()) throw Error(ErrorKind::UnknownColumn, "no columns requested");
  // Validates names up front, even for rows that leave them empty.
  const ScanRow probe;
  column_value(probe, x_column);
  for (const auto& c : columns) column_value(probe, c);

  Range xr, yr;
  for (const auto& s : series)
    for (const auto& row : s.rows) {
      const auto x = column_value(row, x_column);
      if (!x) continue;
      xr.add(*x);
      for (const auto& c : columns)
        if (const auto y = column_value(row, c)) yr.add(*y);
    }
  xr.pad();
  yr.pad();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  if (!title.empty())
    o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";

  // Axes and ticks.
  o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\""
    << px(kTop + ph) << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft) << "\" y2=\"" << px(kTop + ph)
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 5.0;
    o << "<line x1=\"" << px(sx(xv)) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(sx(xv)) << "\" y2=\""
      << px(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px(sx(xv)) << "\" y=\"" << px(kTop + ph + 19) << "\" text-anchor=\"middle\" font-size=\"11\">"
      << fmt(std::round(xv * 1e4) / 1e4) << "</text>\n";
    o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy(yv)) << "\" x2=\"" << px(kLeft) << "\" y2=\""
      << px(sy(yv)) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(yv) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
      << fmt(std::round(yv * 1e4) / 1e4) << "</text>\n";
  }
  o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 12)
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_column) << "</text>\n";
  std::string ylabel;
  for (const auto& c : columns) ylabel += (ylabel.empty() ? "" : ", ") + c;
  o << "<text x=\"18\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
    << px(kTop + ph / 2) << ")\">" << escape(ylabel) << "</text>\n";

  std::size_t curve = 0;
  for (const auto& s : series) {
    for (const auto& c : columns) {
      const char* colour = kPalette[curve % kPalette.size()];
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : s.rows) {
        const auto x = column_value(row, x_column);
        const auto y = column_value(row, c);
        if (x && y && std::isfinite(*x) && std::isfinite(*y)) pts.emplace_back(sx(*x), sy(*y));
      }
      if (pts.size() == 1) {
        const auto [mx, my] = pts.front();
        o << "<line x1=\"" << px(mx - 4) << "\" y1=\"" << px(my - 4) << "\" x2=\"" << px(mx + 4) << "\" y2=\""
          << px(my + 4) << "\" stroke=\"" << colour << "\"/>\n";
        o << "<line x1=\"" << px(mx - 4) << "\" y1=\"" << px(my + 4) << "\" x2=\"" << px(mx + 4) << "\" y2=\""
          << px(my - 4) << "\" stroke=\"" << colour << "\"/>\n";
      } else if (pts.size() > 1) {
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k)
          o << (k ? " " : "") << px(pts[k].first) << ',' << px(pts[k].second);
        o << "\"/>\n";
      }
      const double ly = kTop + 14.0 + 18.0 * static_cast<double>(curve);
      const std::string label = s.label.empty() ? c : s.label + " " + c;
      o << "<line x1=\"" << px(kLeft + pw + 12) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(kLeft + pw + 32)
        << "\" y2=\"" << px(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
      o << "<text x=\"" << px(kLeft + pw + 37) << "\" y=\"" << px(ly + 4) << "\" font-size=\"11\">" << escape(label)
        << "</text>\n";
      ++curve;
    }
  }
  o << "</svg>\n";
  return o.str();
}

void emit_svg(const std::vector<Series>& series, const std::string& x_column,
              const std::vector<std::string>& columns, const std::filesystem::path& path, const std::string& title) {
  write_text(path, render_svg(series, x_column, columns, title));
}

void emit_svg(const Table& table, const std::string& x_column, const std::vector<std::string>& columns,
              const std::filesystem::path& path, const std::string& title) {
  emit_svg(std::vector<Series>{{"", table}}, x_column, columns, path, title);
}

// Figure datasets ---------------------------------------------------------

namespace {

int count_failed(const Table& t) {
  return static_cast<int>(std::count_if(t.begin(), t.end(), row_failed));
}

Table concat(const std::vector<Series>& series) {
  Table out;
  for (const auto& s : series) out.insert(out.end(), s.rows.begin(), s.rows.end());
  return out;
}

std::string region_csv(const std::vector<std::pair<double, Region>>& regions) {
  std::string out = "gamma,R,T,kind,h_lo,h_hi,lo_open,hi_open\n";
  for (const auto& [t, r] : regions) {
    const char* kind = r.kind == Region::Kind::Point ? "point" : r.kind == Region::Kind::Interval ? "interval" : "none";
    out += "0.5,1," + fmt(t) + "," + kind + ",";
    if (r.kind != Region::Kind::NotFound) out += fmt(r.lo) + "," + fmt(r.hi);
    else out += ",";
    out += std::string(",") + (r.lo_open ? "1" : "0") + "," + (r.hi_open ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace

int write_figures(const std::filesystem::path& dir, const FigureOptions& opts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  int failed = 0;

  SweepSpec base;
  base.model = ModelKind::XY;
  base.axis = Axis::H;
  base.min = 0.0;
  base.max = 2.0;
  base.count = opts.points;
  base.gamma = 0.5;
  base.temperature = 0.0;

  // Fig. 1: discord, classical correlations and EoF against h.
  const Table fig1 = sweep(base);
  failed += count_failed(fig1);
  emit_csv(fig1, dir / "fig1.csv");
  emit_svg(fig1, "h", {"discord", "cc", "eof"}, dir / "fig1.svg", "XY chain, gamma = 0.5, R = 1, T = 0");

  // Fig. 2: separations 1, 2, 3 and infinity.
  std::vector<Series> fig2;
  for (const auto& r : {xy::Separation::finite(1), xy::Separation::finite(2), xy::Separation::finite(3),
                        xy::Separation::infinite()}) {
    SweepSpec s = base;
    s.separation = r;
    fig2.push_back({"R=" + r.to_string(), sweep(s)});
  }
  const Table fig2_rows = concat(fig2);
  failed += count_failed(fig2_rows);
  emit_csv(fig2_rows, dir / "fig2.csv");
  emit_svg(fig2, "h", {"discord"}, dir / "fig2_discord.svg", "Discord against h for several separations");
  emit_svg(fig2, "h", {"cc"}, dir / "fig2_cc.svg", "Classical correlations against h for several separations");

  // Fig. 3: temperature dependence and the null-entanglement window.
  std::vector<Series> fig3;
  std::vector<std::pair<double, Region>> regions;
  for (double t : {0.01, 0.1, 0.3, 0.5, 1.0}) {
    SweepSpec s = base;
    s.temperature = t;
    fig3.push_back({"T=" + fmt(t), sweep(s)});
  }
  for (double t : {0.0, 0.01, 0.1, 0.3, 0.5, 1.0})
    regions.emplace_back(t, zero_entanglement_region(0.5, xy::Separation::finite(1), t));
  const Table fig3_rows = concat(fig3);
  failed += count_failed(fig3_rows);
  emit_csv(fig3_rows, dir / "fig3.csv");
  write_text(dir / "fig3_region.csv", region_csv(regions));
  emit_svg(fig3, "h", {"eof"}, dir / "fig3_eof.svg", "Entanglement of formation against h");
  emit_svg(fig3, "h", {"discord"}, dir / "fig3_discord.svg", "Discord against h");

  // Fig. 4: Heisenberg pair against temperature.
  std::vector<Series> fig4;
  for (double b : {1.0, 4.0, 8.0, 25.0}) {
    SweepSpec s;
    s.model = ModelKind::Heisenberg;
    s.axis = Axis::T;
    s.min = 0.05;
    s.max = 10.0;
    s.count = opts.points;
    s.coupling = 1.0;
    s.field = b;
    fig4.push_back({"B=" + fmt(b), sweep(s)});
  }
  const Table fig4_rows = concat(fig4);
  failed += count_failed(fig4_rows);
  emit_csv(fig4_rows, dir / "fig4.csv");
  for (std::size_t k = 0; k < fig4.size(); ++k) {
    const std::string name = "fig4_" + std::string(1, static_cast<char>('a' + k)) + ".svg";
    emit_svg(fig4[k].rows, "T", {"concurrence", "discord", "cc"}, dir / name,
             "Heisenberg pair, J = 1, " + fig4[k].label);
  }
  return failed;
}

}  // namespace spincorr::scan
