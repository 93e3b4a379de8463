#pragma once

// Tiny SVG writer for the strip pictures: polyline paths for the level
// curves, circles for the zeros, label text along the reference edge.
// When the t-range is a multiple of 40 the picture is split into strips
// of height 40 laid side by side.

#include <sstream>
#include <string>
#include <vector>

#include "hexwave/xray.hpp"

namespace hexwave {

struct SvgOptions {
  double strip_height = 40.0;  // t units per strip
  double px_per_sigma = 60.0;
  double px_per_t = 14.0;
  double margin = 34.0;
};

namespace detail {

inline std::string svg_path(const std::vector<CurvePoint>& pts, double sigma_lo, double t0,
                            double t1, double x_off, double y_off, const SvgOptions& o) {
  std::ostringstream d;
  bool pen_up = true;
  char cmd = 'M';
  for (const auto& p : pts) {
    if (p.t < t0 - 1e-9 || p.t > t1 + 1e-9) {
      pen_up = true;
      continue;
    }
    const double x = x_off + (p.sigma - sigma_lo) * o.px_per_sigma;
    const double y = y_off + (t1 - p.t) * o.px_per_t;
    cmd = pen_up ? 'M' : 'L';
    pen_up = false;
    d << cmd << x << ' ' << y << ' ';
  }
  return d.str();
}

}  // namespace detail

/// Render the traced strip. Thick curves solid dark, thin curves light,
/// zeros as dots on the critical line, labels on the reference edge.
inline std::string render_strip_svg(const std::vector<LevelCurve>& curves, const GridSpec& g,
                                    const NumberingResult& numbering,
                                    const std::vector<double>& zeros, double display_sigma_hi,
                                    const SvgOptions& opts = {}) {
  const double t_span = g.t_hi - g.t_lo;
  const int n_strips =
      std::abs(std::remainder(t_span, opts.strip_height)) < 1e-9
          ? std::max(1, int(std::lround(t_span / opts.strip_height)))
          : 1;
  const double strip_t = t_span / n_strips;
  const double sigma_span = display_sigma_hi - g.sigma_lo;
  const double strip_w = sigma_span * opts.px_per_sigma;
  const double strip_h = strip_t * opts.px_per_t;
  const double width = opts.margin + n_strips * (strip_w + opts.margin);
  const double height = 2 * opts.margin + strip_h;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int k = 0; k < n_strips; ++k) {
    const double t0 = g.t_lo + k * strip_t, t1 = t0 + strip_t;
    const double x_off = opts.margin + k * (strip_w + opts.margin);
    const double y_off = opts.margin;
    svg << "<rect x=\"" << x_off << "\" y=\"" << y_off << "\" width=\"" << strip_w
        << "\" height=\"" << strip_h << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.6\"/>\n";
    for (const auto& c : curves) {
      std::string d = detail::svg_path(c.points, g.sigma_lo, t0, t1, x_off, y_off, opts);
      if (d.empty()) continue;
      if (c.parity == Parity::thick)
        svg << "<path d=\"" << d << "\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"1.4\"/>\n";
      else
        svg << "<path d=\"" << d << "\" fill=\"none\" stroke=\"#9a9a9a\" stroke-width=\"0.7\"/>\n";
    }
    for (double z : zeros) {
      if (z < t0 || z > t1) continue;
      const double x = x_off + (0.5 - g.sigma_lo) * opts.px_per_sigma;
      const double y = y_off + (t1 - z) * opts.px_per_t;
      svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.2\" fill=\"#c02020\"/>\n";
    }
    for (const auto& cr : numbering.crossings) {
      if (cr.t < t0 || cr.t > t1) continue;
      const double y = y_off + (t1 - cr.t) * opts.px_per_t + 2.5;
      svg << "<text x=\"" << x_off - opts.margin * 0.9 << "\" y=\"" << y
          << "\" font-size=\"8\" font-family=\"sans-serif\" fill=\""
          << (cr.parity == Parity::thick ? "#1a1a1a" : "#9a9a9a") << "\">" << cr.label
          << "</text>\n";
    }
    svg << "<text x=\"" << x_off << "\" y=\"" << opts.margin - 8 << "\" font-size=\"10\" "
        << "font-family=\"sans-serif\">t = " << t0 << " .. " << t1 << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Simple polyline chart for Argand diagrams and phase traces.
inline std::string render_xy_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                                 const std::string& caption, double w = 640, double h = 640) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (double x : xs) { x_lo = std::min(x_lo, x); x_hi = std::max(x_hi, x); }
  for (double y : ys) { y_lo = std::min(y_lo, y); y_hi = std::max(y_hi, y); }
  if (!(x_lo < x_hi)) { x_lo -= 1; x_hi += 1; }
  if (!(y_lo < y_hi)) { y_lo -= 1; y_hi += 1; }
  const double m = 40;
  auto px = [&](double x) { return m + (x - x_lo) / (x_hi - x_lo) * (w - 2 * m); };
  auto py = [&](double y) { return h - m - (y - y_lo) / (y_hi - y_lo) * (h - 2 * m); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (x_lo < 0 && x_hi > 0)
    svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(y_lo) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(y_hi) << "\" stroke=\"#ccc\"/>\n";
  if (y_lo < 0 && y_hi > 0)
    svg << "<line x1=\"" << px(x_lo) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x_hi) << "\" y2=\""
        << py(0) << "\" stroke=\"#ccc\"/>\n";
  svg << "<path d=\"";
  for (size_t i = 0; i < xs.size(); ++i) svg << (i ? 'L' : 'M') << px(xs[i]) << ' ' << py(ys[i]) << ' ';
  svg << "\" fill=\"none\" stroke=\"#1a55a0\" stroke-width=\"0.8\"/>\n";
  svg << "<text x=\"" << m << "\" y=\"" << m - 14
      << "\" font-size=\"12\" font-family=\"sans-serif\">" << caption << "</text>\n</svg>\n";
  return svg.str();
}

}  // namespace hexwave
