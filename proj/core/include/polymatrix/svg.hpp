#pragma once

#include <string>
#include <vector>

namespace polymatrix {

/// Minimal deterministic SVG line plots; output bytes depend only on the
/// input series.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgOptions {
  int width = 640;
  int height = 420;
  bool log_x = false;
  bool log_y = false;
  std::string title;
};

std::string svg_line_plot(const std::vector<SvgSeries>& series,
                          const SvgOptions& options);

void write_file(const std::string& path, const std::string& content);

}  // namespace polymatrix
