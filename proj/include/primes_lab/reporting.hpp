#pragma once

// CSV and SVG artifacts. All numbers go through fixed printf formats so
// identical inputs give identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "primes_lab/analysis.hpp"
#include "primes_lab/summaries.hpp"

namespace primes_lab {

inline std::string format_fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

inline std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline constexpr const char* kSeriesCsvHeader = "x,actual,estimate,ratio,abs_pct_err";
inline constexpr const char* kMonoidSummaryCsvHeader =
    "d,largest_element,actual_count,estimate,R_d,abs_R_minus_1,mape_pct";
inline constexpr const char* kGaussianMapeCsvHeader = "norm_bound,mape_pct";

inline std::string csv_row(const SeriesPoint& p) {
  std::string row = std::to_string(p.x) + ',' + std::to_string(p.actual) + ',' +
                    format_sig(p.estimate, 6) + ',' + format_fixed(p.ratio, 5) + ',';
  if (p.pct_err) row += format_fixed(*p.pct_err, 5);
  return row;
}

inline std::string csv_row(const MonoidSummary& s) {
  return std::to_string(s.d) + ',' + std::to_string(s.largest_element) + ',' +
         std::to_string(s.actual_count) + ',' + format_fixed(s.estimate, 2) + ',' +
         format_fixed(s.r_d, 5) + ',' + format_fixed(s.abs_r_minus_1, 5) + ',' +
         format_fixed(s.mape_pct, 2);
}

inline std::string csv_row(const GaussianMapeRow& r) {
  return std::to_string(r.norm_bound) + ',' + format_fixed(r.mape_pct, 3);
}

namespace detail {

template <class Rows>
void write_rows(const std::string& path, const char* header, const Rows& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << header << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
  out.flush();
  if (!out) throw io_error("write to " + path + " failed");
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw io_error("write to " + path + " failed");
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

} // namespace detail

inline void write_csv(const CountSeries& series, const std::string& path) {
  detail::write_rows(path, kSeriesCsvHeader, series.points);
}

inline void write_csv(const std::vector<MonoidSummary>& rows, const std::string& path) {
  detail::write_rows(path, kMonoidSummaryCsvHeader, rows);
}

inline void write_csv(const std::vector<GaussianMapeRow>& rows, const std::string& path) {
  detail::write_rows(path, kGaussianMapeCsvHeader, rows);
}

/// Parse a series CSV written by write_csv. Metadata is not stored in the file.
inline CountSeries read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSeriesCsvHeader)
    throw std::invalid_argument("series csv: missing or unexpected header");
  CountSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 5) throw std::invalid_argument("series csv: expected 5 fields: " + line);
    SeriesPoint p;
    p.x = std::stoull(f[0]);
    p.actual = std::stoull(f[1]);
    p.estimate = std::strtod(f[2].c_str(), nullptr);
    p.ratio = std::strtod(f[3].c_str(), nullptr);
    if (!f[4].empty()) p.pct_err = std::strtod(f[4].c_str(), nullptr);
    series.points.push_back(p);
  }
  return series;
}

// ---------------------------------------------------------------------------
// SVG line chart
// ---------------------------------------------------------------------------

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;
inline constexpr std::size_t kSvgMaxPoints = 2000;

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline double nice_step(double range, int target) {
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double k = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
  return k * mag;
}

inline std::string tick_label(double v, double step) {
  if (step >= 1.0) return format_fixed(v, 0);
  const int places = static_cast<int>(std::ceil(-std::log10(step)));
  return format_fixed(v, places);
}

// Evenly spaced indices, first and last included.
inline std::vector<std::size_t> decimate(std::size_t n, std::size_t keep) {
  std::vector<std::size_t> idx;
  if (n <= keep) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  for (std::size_t i = 0; i < keep; ++i) idx.push_back(i * (n - 1) / (keep - 1));
  return idx;
}

} // namespace detail

/// Two polylines (actual, estimate) on linear axes, 800x600.
inline std::string svg_chart(const CountSeries& series) {
  if (series.empty()) throw std::invalid_argument("render_svg: empty series");
  constexpr double left = 80, right = 30, top = 50, bottom = 60;
  constexpr double pw = kSvgWidth - left - right, ph = kSvgHeight - top - bottom;

  const auto idx = detail::decimate(series.size(), kSvgMaxPoints);
  double x_min = static_cast<double>(series.points.front().x);
  double x_max = static_cast<double>(series.points.back().x);
  double y_max = 0.0;
  for (const auto& p : series.points)
    y_max = std::max({y_max, static_cast<double>(p.actual), p.estimate});
  if (x_max <= x_min) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return top + ph - y / y_max * ph; };
  auto num = [](double v) { return format_fixed(v, 2); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kSvgWidth) +
       "\" height=\"" + std::to_string(kSvgHeight) + "\" viewBox=\"0 0 " +
       std::to_string(kSvgWidth) + ' ' + std::to_string(kSvgHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kSvgWidth) + "\" height=\"" +
       std::to_string(kSvgHeight) + "\" fill=\"white\"/>\n";
  const std::string title =
      series.metadata.title.empty() ? series.metadata.domain : series.metadata.title;
  s += "<text x=\"" + num(kSvgWidth / 2.0) +
       "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
       detail::xml_escape(title) + "</text>\n";

  // Grid and ticks.
  const double xs = detail::nice_step(x_max - x_min, 6);
  for (auto k = static_cast<long long>(std::ceil(x_min / xs)); k * xs <= x_max + 1e-9 * xs; ++k) {
    const double t = static_cast<double>(k) * xs;
    const std::string x = num(px(t));
    s += "<line x1=\"" + x + "\" y1=\"" + num(top) + "\" x2=\"" + x + "\" y2=\"" +
         num(top + ph) + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + x + "\" y=\"" + num(top + ph + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::tick_label(t, xs) + "</text>\n";
  }
  const double ys = detail::nice_step(y_max, 6);
  for (long long k = 0; k * ys <= y_max + 1e-9 * ys; ++k) {
    const double t = static_cast<double>(k) * ys;
    const std::string y = num(py(t));
    s += "<line x1=\"" + num(left) + "\" y1=\"" + y + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
         y + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + num(left - 8) + "\" y=\"" + num(py(t) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::tick_label(t, ys) + "</text>\n";
  }
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) +
       "\" y2=\"" + num(top + ph) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
       num(top + ph) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(kSvgHeight - 15.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">x</text>\n";
  s += "<text x=\"20\" y=\"" + num(top + ph / 2) + "\" transform=\"rotate(-90 20 " +
       num(top + ph / 2) +
       ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">count</text>\n";

  struct Curve {
    const char* name;
    const char* color;
    bool actual;
  };
  for (const Curve c : {Curve{"actual", "#1f77b4", true}, Curve{"estimate", "#ff7f0e", false}}) {
    std::string pts;
    for (std::size_t i : idx) {
      const auto& p = series.points[i];
      const double y = c.actual ? static_cast<double>(p.actual) : p.estimate;
      if (!pts.empty()) pts += ' ';
      pts += num(px(static_cast<double>(p.x))) + ',' + num(py(y));
    }
    if (idx.size() == 1) pts += ' ' + pts;
    s += "<polyline class=\"" + std::string(c.name) + "\" fill=\"none\" stroke=\"" + c.color +
         "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    if (idx.size() == 1) {
      const auto& p = series.points.front();
      const double y = c.actual ? static_cast<double>(p.actual) : p.estimate;
      s += "<circle cx=\"" + num(px(static_cast<double>(p.x))) + "\" cy=\"" + num(py(y)) +
           "\" r=\"3\" fill=\"" + c.color + "\"/>\n";
    }
  }

  // Legend.
  const double lx = left + 15, ly = top + 15;
  s += "<rect x=\"" + num(lx - 5) + "\" y=\"" + num(ly - 10) +
       "\" width=\"110\" height=\"44\" fill=\"white\" stroke=\"#999999\"/>\n";
  s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 25) + "\" y2=\"" +
       num(ly) + "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  s += "<text x=\"" + num(lx + 32) + "\" y=\"" + num(ly + 4) +
       "\" font-family=\"sans-serif\" font-size=\"12\">actual</text>\n";
  s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly + 20) + "\" x2=\"" + num(lx + 25) +
       "\" y2=\"" + num(ly + 20) + "\" stroke=\"#ff7f0e\" stroke-width=\"2\"/>\n";
  s += "<text x=\"" + num(lx + 32) + "\" y=\"" + num(ly + 24) +
       "\" font-family=\"sans-serif\" font-size=\"12\">estimate</text>\n";
  s += "</svg>\n";
  return s;
}

inline void render_svg(const CountSeries& series, const std::string& path) {
  detail::write_text(path, svg_chart(series));
}

} // namespace primes_lab
