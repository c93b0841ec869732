#ifndef AFFINE_FIGURE_HPP
#define AFFINE_FIGURE_HPP

#include <string>
#include <vector>

#include "affine/geodesic.hpp"

namespace affine {

// One drawn geodesic of the c = 0 picture.
struct FigureCurve {
  double a = 0.0, b = 0.0;
  bool alienated = false; // the b = 0 horizontal, drawn dashed
  std::vector<Point2> points;
  Point2 at_focus_param; // position at t = pi/|b| (b != 0)
};

struct FigurePanel {
  Point2 base;
  Point2 focus_up, focus_down; // (-u, v +/- pi)
  std::vector<FigureCurve> curves;
};

struct FigureOptions {
  int n_a = 9;        // slopes a in [-a_max, a_max]
  double a_max = 4.0;
  int samples = 240;  // polyline resolution per curve
  double t_extra = 0.4;
};

// Geodesic fans (b = +/-1, a over a grid) from each base of the flat-side
// picture; the focusing points are (-u, v +/- pi).
std::vector<FigurePanel> figure_panels(const std::vector<Point2> &bases,
                                       const FigureOptions &opts = {});

// Panels side by side; fixed viewport x1 in [-4,4], x2 in [-pi-0.5, pi+0.5].
std::string figure_svg(const std::vector<FigurePanel> &panels);

} // namespace affine

#endif
