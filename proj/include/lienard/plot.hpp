#pragma once

#include "lienard/integrate.hpp"

#include <cstddef>
#include <string>

namespace lienard {

struct PlotSpec {
  double x_min = -3.0, x_max = 3.0;  ///< u window at zoom 1
  double y_min = -3.0, y_max = 3.0;  ///< u' window at zoom 1
  double zoom = 1.0;  ///< >1 shrinks the window about the trajectory centroid
  int width = 640, height = 480;  ///< display size in px
  std::string stroke = "#1f5fa8";
  double stroke_width = 1.2;        ///< px
  std::size_t max_points = 8000;    ///< deterministic stride thinning
};

/// Phase portrait (u on the horizontal axis, u' vertical) as a standalone SVG
/// document.  The viewBox is in data coordinates, so zoom 20 shows up as a
/// 20x smaller viewBox about the centroid.  Output is byte-deterministic
/// (fixed 6-decimal formatting).  Throws std::invalid_argument on a
/// trajectory with fewer than 2 points.
std::string render_phase_svg(const Trajectory& traj, const PlotSpec& spec);

}  // namespace lienard
