// SPDX-License-Identifier: Apache-2.0
#include "nanowire/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "nanowire/error.hpp"

namespace nanowire::cli {
namespace {

constexpr double kPanelW = 480, kPanelH = 340;
constexpr double kLeft = 72, kRight = 16, kTop = 34, kBottom = 48;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

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
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo <= 1e-300 * std::max(1.0, std::fabs(hi))) {
      const double pad = lo == 0.0 ? 1.0 : 0.05 * std::fabs(lo);
      lo -= pad;
      hi += pad;
    }
  }
};

void render_panel(std::string& o, const Panel& p, double ox, double oy) {
  Range xr, yr;
  for (const auto& s : p.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  for (const auto& a : p.arrows) xr.add(a.x), yr.add(a.y);
  xr.finish();
  yr.finish();
  const double w = kPanelW - kLeft - kRight, h = kPanelH - kTop - kBottom;
  auto sx = [&](double x) { return ox + kLeft + (x - xr.lo) / (xr.hi - xr.lo) * w; };
  auto sy = [&](double y) { return oy + kTop + h - (y - yr.lo) / (yr.hi - yr.lo) * h; };

  o += fmt::format("<g>\n<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                   "fill=\"none\" stroke=\"#333\"/>\n",
                   ox + kLeft, oy + kTop, w, h);
  o += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                   ox + kLeft + w / 2, oy + 20, escape(p.title));
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0, fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    o += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"10\">{:.3g}</text>\n",
                     sx(fx), oy + kTop + h + 14, fx);
    o += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"10\">{:.3g}</text>\n",
                     ox + kLeft - 4, sy(fy) + 3, fy);
  }
  o += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                   ox + kLeft + w / 2, oy + kPanelH - 10, escape(p.x_label));
  o += fmt::format("<text transform=\"translate({:.2f},{:.2f}) rotate(-90)\" text-anchor=\"middle\" "
                   "font-size=\"12\">{}</text>\n",
                   ox + 14, oy + kTop + h / 2, escape(p.y_label));

  for (const auto& a : p.arrows) {
    const double len = std::hypot(a.dx / (xr.hi - xr.lo) * w, a.dy / (yr.hi - yr.lo) * h);
    if (!(len > 0.0) || !std::isfinite(len)) continue;
    const double ux = a.dx / (xr.hi - xr.lo) * w / len, uy = -a.dy / (yr.hi - yr.lo) * h / len;
    const double x0 = sx(a.x), y0 = sy(a.y), x1 = x0 + 9 * ux, y1 = y0 + 9 * uy;
    o += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#999\"/>\n",
                     x0, y0, x1, y1);
    o += fmt::format("<polygon points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"#999\"/>\n", x1,
                     y1, x1 - 3 * ux - 2 * uy, y1 - 3 * uy + 2 * ux, x1 - 3 * ux + 2 * uy,
                     y1 - 3 * uy - 2 * ux);
  }

  std::size_t legend = 0;
  for (std::size_t i = 0; i < p.series.size(); ++i) {
    const auto& s = p.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::string pts;
    for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j) {
      if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j])) continue;
      pts += fmt::format("{:.2f},{:.2f} ", sx(s.x[j]), sy(s.y[j]));
    }
    if (!pts.empty()) pts.pop_back();
    if (s.markers) {
      for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j)
        o += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n", sx(s.x[j]),
                         sy(s.y[j]), color);
    } else {
      o += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n",
                       color, s.dashed ? " stroke-dasharray=\"5,3\"" : "", pts);
    }
    if (!s.label.empty()) {
      const double ly = oy + kTop + 12 + 13 * static_cast<double>(legend++);
      o += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\"/>\n",
                       ox + kLeft + w - 120, ly - 3, ox + kLeft + w - 104, ly - 3, color);
      o += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\">{}</text>\n",
                       ox + kLeft + w - 100, ly, escape(s.label));
    }
  }
  o += "</g>\n";
}

}  // namespace

std::string render_svg(std::span<const Panel> panels, int columns, const std::string& title) {
  columns = std::max(1, columns);
  const auto n = static_cast<int>(panels.size());
  const int rows = std::max(1, (n + columns - 1) / columns);
  const int cols = std::min(columns, std::max(n, 1));
  const double width = kPanelW * cols, height = kPanelH * rows + 30;
  std::string o;
  o += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                   "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\">\n",
                   width, height, width, height);
  o += fmt::format("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  o += fmt::format("<text x=\"{:.2f}\" y=\"20\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                   width / 2, escape(title));
  for (int i = 0; i < n; ++i)
    render_panel(o, panels[static_cast<std::size_t>(i)], kPanelW * (i % columns), 30 + kPanelH * (i / columns));
  o += "</svg>\n";
  return o;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << content;
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace nanowire::cli
