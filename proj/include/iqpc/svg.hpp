#pragma once

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "iqpc/phase.hpp"

namespace iqpc {

struct SvgOptions {
  int width = 880;
  int height = 640;
  std::string title = "Critical-depth phase diagram";
};

namespace detail {

inline void svg_append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

inline std::string svg_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

}  // namespace detail

// Renders operating points against the critical-depth boundary on log-log
// axes. The region under the curve (shallower than D_*) is shaded as the
// potentially hard side. Output is deterministic for fixed inputs.
inline std::string phase_diagram_svg(const std::vector<MarginReport>& reports,
                                     const PhaseParams& params = {},
                                     const SvgOptions& opts = {}) {
  validate_phase_params(params);
  const double p_limit = boundary_domain_limit(params);

  double x_min = 1e-4;
  double y_max = 10.0;
  for (const MarginReport& r : reports) {
    if (r.point.p_eff > 0.0) x_min = std::min(x_min, r.point.p_eff);
    y_max = std::max({y_max, r.point.depth, r.d_star});
  }
  x_min /= 2.0;
  const double x_max = p_limit;
  const double y_min = 1.0;
  y_max *= 1.5;

  const double ml = 70.0, mr = 24.0, mt = 48.0, mb = 56.0;
  const double pw = opts.width - ml - mr;
  const double ph = opts.height - mt - mb;
  const double lx0 = std::log10(x_min), lx1 = std::log10(x_max);
  const double ly0 = std::log10(y_min), ly1 = std::log10(y_max);
  auto sx = [&](double p) { return ml + (std::log10(p) - lx0) / (lx1 - lx0) * pw; };
  auto sy = [&](double d) { return mt + ph - (std::log10(d) - ly0) / (ly1 - ly0) * ph; };

  std::string s;
  detail::svg_append(s,
                     "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                     "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\">\n",
                     opts.width, opts.height, opts.width, opts.height);
  detail::svg_append(s, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", opts.width,
                     opts.height);
  detail::svg_append(s,
                     "<defs><clipPath id=\"plot\"><rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                     "height=\"%.2f\"/></clipPath></defs>\n",
                     ml, mt, pw, ph);
  s += "<text x=\"" + std::to_string(opts.width / 2) +
       "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">" + detail::svg_escape(opts.title) +
       "</text>\n";

  // Boundary polyline and the shaded hard region beneath it.
  const int samples = 512;
  std::string curve, region;
  for (int i = 0; i <= samples; ++i) {
    const double lp = lx0 + (lx1 - lx0) * i / samples;
    const double p = std::pow(10.0, lp);
    if (!(p > 0.0 && p < p_limit)) continue;
    const double d = critical_depth(p, params);
    char pt[48];
    std::snprintf(pt, sizeof pt, "%.2f,%.2f ", sx(p), std::clamp(sy(d), mt - 2.0, mt + ph + 2.0));
    curve += pt;
    region += pt;
  }
  char corner[48];
  std::snprintf(corner, sizeof corner, "%.2f,%.2f ", ml + pw, mt + ph);
  region += corner;
  std::snprintf(corner, sizeof corner, "%.2f,%.2f", ml, mt + ph);
  region += corner;
  detail::svg_append(s,
                     "<polygon points=\"%s\" fill=\"#d62728\" fill-opacity=\"0.12\" "
                     "stroke=\"none\" clip-path=\"url(#plot)\"/>\n",
                     region.c_str());
  detail::svg_append(s,
                     "<polyline points=\"%s\" fill=\"none\" stroke=\"#333333\" "
                     "stroke-width=\"1.8\" clip-path=\"url(#plot)\"/>\n",
                     curve.c_str());

  // Decade ticks.
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
    const double x = sx(std::pow(10.0, e));
    detail::svg_append(s,
                       "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#cccccc\" "
                       "stroke-width=\"0.6\"/>\n",
                       x, mt, x, mt + ph);
    detail::svg_append(s,
                       "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
                       "font-size=\"12\">1e%d</text>\n",
                       x, mt + ph + 18.0, e);
  }
  for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
    const double y = sy(std::pow(10.0, e));
    detail::svg_append(s,
                       "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#cccccc\" "
                       "stroke-width=\"0.6\"/>\n",
                       ml, y, ml + pw, y);
    detail::svg_append(s,
                       "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" "
                       "font-size=\"12\">1e%d</text>\n",
                       ml - 8.0, y + 4.0, e);
  }
  detail::svg_append(s,
                     "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
                     "stroke=\"#444444\" stroke-width=\"1\"/>\n",
                     ml, mt, pw, ph);
  detail::svg_append(s,
                     "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-size=\"13\">"
                     "effective noise p</text>\n",
                     ml + pw / 2, mt + ph + 40.0);
  detail::svg_append(s,
                     "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-size=\"13\" "
                     "transform=\"rotate(-90 %.2f %.2f)\">depth (layers)</text>\n",
                     ml - 48.0, mt + ph / 2, ml - 48.0, mt + ph / 2);

  auto color_of = [](Regime r) {
    switch (r) {
      case Regime::Simulatable: return "#2a7ab0";
      case Regime::PotentiallyHard: return "#d62728";
      case Regime::Boundary: return "#777777";
    }
    return "#777777";
  };
  for (const MarginReport& r : reports) {
    if (!(r.point.p_eff > 0.0)) continue;
    const double x = sx(r.point.p_eff);
    const double y = std::clamp(sy(r.point.depth), mt, mt + ph);
    detail::svg_append(s,
                       "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4.5\" fill=\"%s\" stroke=\"#222222\" "
                       "stroke-width=\"0.8\"/>\n",
                       x, y, color_of(r.regime));
    detail::svg_append(s, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\">", x + 7.0, y - 5.0);
    s += detail::svg_escape(r.point.label) + "</text>\n";
  }

  // Legend.
  const double leg_x = ml + 14.0, leg_y = mt + 14.0;
  detail::svg_append(s,
                     "<rect x=\"%.2f\" y=\"%.2f\" width=\"178\" height=\"70\" fill=\"white\" "
                     "fill-opacity=\"0.85\" stroke=\"#999999\" stroke-width=\"0.8\"/>\n",
                     leg_x, leg_y);
  const char* names[3] = {"simulatable", "potentially hard", "boundary"};
  const Regime regimes[3] = {Regime::Simulatable, Regime::PotentiallyHard, Regime::Boundary};
  for (int i = 0; i < 3; ++i) {
    detail::svg_append(s, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4.5\" fill=\"%s\"/>\n",
                       leg_x + 16.0, leg_y + 17.0 + 20.0 * i, color_of(regimes[i]));
    detail::svg_append(s, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n", leg_x + 30.0,
                       leg_y + 21.0 + 20.0 * i, names[i]);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace iqpc
