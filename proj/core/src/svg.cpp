#include "polymatrix/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polymatrix {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                         "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

std::string svg_line_plot(const std::vector<SvgSeries>& series,
                          const SvgOptions& opt) {
  const double mx = 56, my = 36;  // margins
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto tx = [&](double v) { return opt.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return opt.log_y ? std::log10(v) : v; };
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (opt.log_x && s.x[i] <= 0) continue;
      if (opt.log_y && s.y[i] <= 0) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  if (!(xmin < xmax)) xmax = xmin + 1;
  if (!(ymin < ymax)) ymax = ymin + 1;

  auto px = [&](double v) {
    return mx + (tx(v) - xmin) / (xmax - xmin) * (opt.width - 2 * mx);
  };
  auto py = [&](double v) {
    return opt.height - my -
           (ty(v) - ymin) / (ymax - ymin) * (opt.height - 2 * my);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    out << "<text x=\"" << opt.width / 2 << "\" y=\"20\" text-anchor=\"middle\""
        << " font-family=\"monospace\" font-size=\"13\">" << opt.title
        << "</text>\n";
  out << "<rect x=\"" << fmt(mx) << "\" y=\"" << fmt(my) << "\" width=\""
      << fmt(opt.width - 2 * mx) << "\" height=\"" << fmt(opt.height - 2 * my)
      << "\" fill=\"none\" stroke=\"#999\"/>\n";

  int color = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 6]
        << "\" stroke-width=\"1\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (opt.log_x && s.x[i] <= 0) continue;
      if (opt.log_y && s.y[i] <= 0) continue;
      out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    }
    out << "\"/>\n";
    if (!s.label.empty())
      out << "<text x=\"" << fmt(mx + 6) << "\" y=\"" << fmt(my + 14 + 14 * color)
          << "\" font-family=\"monospace\" font-size=\"11\" fill=\""
          << kColors[color % 6] << "\">" << s.label << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace polymatrix
