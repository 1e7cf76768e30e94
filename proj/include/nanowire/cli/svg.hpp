// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace nanowire::cli {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
  bool markers = false;
};

/// Direction-only arrow; drawn with a fixed on-screen length.
struct Arrow {
  double x = 0.0, y = 0.0, dx = 0.0, dy = 0.0;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<Arrow> arrows;
};

/// Grid of line-plot panels. Coordinates are printed with fixed precision so
/// identical inputs give identical bytes.
std::string render_svg(std::span<const Panel> panels, int columns, const std::string& title);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nanowire::cli
