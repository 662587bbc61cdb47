#include "lienard/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string_view>
#include <stdexcept>

namespace lienard {

namespace {

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

}  // namespace

std::string render_phase_svg(const Trajectory& traj, const PlotSpec& spec) {
  if (traj.size() < 2)
    throw std::invalid_argument(
        "render_phase_svg: need at least 2 trajectory points");
  if (!(spec.zoom > 0.0))
    throw std::invalid_argument("render_phase_svg: zoom must be > 0");
  if (!(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min))
    throw std::invalid_argument("render_phase_svg: degenerate plot window");

  double cx = 0.5 * (spec.x_min + spec.x_max);
  double cy = 0.5 * (spec.y_min + spec.y_max);
  if (spec.zoom != 1.0) {
    // zoomed window centers on the trajectory centroid
    double su = 0.0, sv = 0.0;
    for (const State& x : traj.states) {
      su += upos(x);
      sv += uprime(x);
    }
    cx = su / static_cast<double>(traj.size());
    cy = sv / static_cast<double>(traj.size());
  }
  const double half_w = 0.5 * (spec.x_max - spec.x_min) / spec.zoom;
  const double half_h = 0.5 * (spec.y_max - spec.y_min) / spec.zoom;
  const double wx0 = cx - half_w;
  const double wy1 = cy + half_h;

  // viewBox in data coordinates; u' axis flipped so it points up on screen
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\" viewBox=\"" << fmt6(wx0) << " "
     << fmt6(-wy1) << " " << fmt6(2.0 * half_w) << " " << fmt6(2.0 * half_h)
     << "\">\n";
  os << "<rect x=\"" << fmt6(wx0) << "\" y=\"" << fmt6(-wy1) << "\" width=\""
     << fmt6(2.0 * half_w) << "\" height=\"" << fmt6(2.0 * half_h)
     << "\" fill=\"#ffffff\"/>\n";

  const double axis_w = 2.0 * half_w / spec.width;  // ~1 px in data units
  if (wx0 < 0.0 && 0.0 < wx0 + 2.0 * half_w)
    os << "<line x1=\"0\" y1=\"" << fmt6(-wy1) << "\" x2=\"0\" y2=\""
       << fmt6(-wy1 + 2.0 * half_h) << "\" stroke=\"#cccccc\" stroke-width=\""
       << fmt6(axis_w) << "\"/>\n";
  if (wy1 - 2.0 * half_h < 0.0 && 0.0 < wy1)
    os << "<line x1=\"" << fmt6(wx0) << "\" y1=\"0\" x2=\""
       << fmt6(wx0 + 2.0 * half_w) << "\" y2=\"0\" stroke=\"#cccccc\" "
       << "stroke-width=\"" << fmt6(axis_w) << "\"/>\n";

  const std::size_t stride =
      std::max<std::size_t>(1, traj.size() / spec.max_points);
  os << "<polyline fill=\"none\" stroke=\"" << spec.stroke
     << "\" stroke-width=\"" << fmt6(spec.stroke_width * axis_w)
     << "\" points=\"";
  bool first = true;
  for (std::size_t i = 0; i < traj.size(); i += stride) {
    if (!first) os << ' ';
    first = false;
    os << fmt6(upos(traj.states[i])) << ',' << fmt6(-uprime(traj.states[i]));
  }
  if ((traj.size() - 1) % stride != 0) {
    os << ' ' << fmt6(upos(traj.states.back())) << ','
       << fmt6(-uprime(traj.states.back()));
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace lienard
