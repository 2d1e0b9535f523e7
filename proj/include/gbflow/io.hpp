#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <string>
#include <vector>

#include "gbflow/tensor_state.hpp"

namespace gbflow {

struct SnapshotColumns {
  std::vector<double> x, rho, u1, theta, Sigma11, sigma, q1;
};

/// One snapshot file: header "x,rho,u1,theta,Sigma11,sigma,q1".
inline void write_snapshot_csv(const std::string& path, const SnapshotColumns& s) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);
  out << "x,rho,u1,theta,Sigma11,sigma,q1\n";
  for (size_t i = 0; i < s.x.size(); ++i)
    out << s.x[i] << ',' << s.rho[i] << ',' << s.u1[i] << ',' << s.theta[i] << ','
        << s.Sigma11[i] << ',' << s.sigma[i] << ',' << s.q1[i] << '\n';
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);
  for (size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

/// Minimal self-contained SVG line chart (one polyline per series).
struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           std::vector<PlotSeries> series, bool logx = false,
                           bool logy = false) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  auto tx = [&](double v) { return logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy ? std::log10(v) : v; };

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (logy && !(s.y[i] > 0.0)) continue;
      if (logx && !(s.x[i] > 0.0)) continue;
      x_lo = std::min(x_lo, tx(s.x[i]));
      x_hi = std::max(x_hi, tx(s.x[i]));
      y_lo = std::min(y_lo, ty(s.y[i]));
      y_hi = std::max(y_hi, ty(s.y[i]));
    }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;

  const double W = 640, H = 440, ml = 70, mr = 20, mt = 40, mb = 50;
  auto px = [&](double v) { return ml + (tx(v) - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - y_lo) / (y_hi - y_lo) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='15'>" << title
      << "</text>\n";
  out << "<text x='" << W / 2 << "' y='" << H - 10 << "' text-anchor='middle' font-size='12'>"
      << xlabel << (logx ? " (log10)" : "") << "</text>\n";
  out << "<text x='15' y='" << H / 2 << "' text-anchor='middle' font-size='12' transform='rotate(-90 15 "
      << H / 2 << ")'>" << ylabel << (logy ? " (log10)" : "") << "</text>\n";
  out << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr << "' height='"
      << H - mt - mb << "' fill='none' stroke='black'/>\n";
  // axis extent labels
  out << std::setprecision(4);
  out << "<text x='" << ml << "' y='" << H - mb + 15 << "' font-size='10'>" << x_lo << "</text>\n";
  out << "<text x='" << W - mr << "' y='" << H - mb + 15 << "' text-anchor='end' font-size='10'>"
      << x_hi << "</text>\n";
  out << "<text x='" << ml - 5 << "' y='" << H - mb << "' text-anchor='end' font-size='10'>" << y_lo
      << "</text>\n";
  out << "<text x='" << ml - 5 << "' y='" << mt + 10 << "' text-anchor='end' font-size='10'>" << y_hi
      << "</text>\n";
  out << std::setprecision(17);

  int ci = 0;
  for (auto& s : series) {
    const char* col = colors[ci % 6];
    out << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if ((logy && !(s.y[i] > 0.0)) || (logx && !(s.x[i] > 0.0))) continue;
      out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    out << "'/>\n";
    out << "<text x='" << W - mr - 5 << "' y='" << mt + 15 + 14 * ci
        << "' text-anchor='end' font-size='11' fill='" << col << "'>" << s.name << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

}  // namespace gbflow
