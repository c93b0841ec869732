#include "affine/figure.hpp"

#include <cstdio>

namespace affine {

std::vector<FigurePanel> figure_panels(const std::vector<Point2> &bases,
                                       const FigureOptions &opts) {
  std::vector<FigurePanel> panels;
  panels.reserve(bases.size());
  for (const Point2 &base : bases) {
    FigurePanel panel;
    panel.base = base;
    panel.focus_up = focusing_point(0.0, base, +1);
    panel.focus_down = focusing_point(0.0, base, -1);

    for (int bi = 0; bi < 2; ++bi) {
      const double b = bi == 0 ? 1.0 : -1.0;
      for (int ai = 0; ai < opts.n_a; ++ai) {
        const double a =
            opts.n_a == 1
                ? 0.0
                : -opts.a_max + 2.0 * opts.a_max * ai / (opts.n_a - 1);
        FigureCurve curve;
        curve.a = a;
        curve.b = b;
        const GeodesicCurve geo = closed_form_geodesic(
            0.0, TangentState{base.x1, base.x2, a, b});
        const double t_end = (M_PI + opts.t_extra) / std::fabs(b);
        curve.points.reserve(static_cast<size_t>(opts.samples) + 1);
        for (int k = 0; k <= opts.samples; ++k)
          curve.points.push_back(geo.position(t_end * k / opts.samples));
        curve.at_focus_param = geo.position(M_PI / std::fabs(b));
        panel.curves.push_back(std::move(curve));
      }
    }

    FigureCurve horizontal;
    horizontal.a = 1.0;
    horizontal.b = 0.0;
    horizontal.alienated = true;
    horizontal.points = {Point2{-4.0, base.x2}, Point2{4.0, base.x2}};
    horizontal.at_focus_param = base;
    panel.curves.push_back(std::move(horizontal));

    panels.push_back(std::move(panel));
  }
  return panels;
}

namespace {

constexpr double kX1Min = -4.0, kX1Max = 4.0;
const double kX2Min = -M_PI - 0.5, kX2Max = M_PI + 0.5;
constexpr double kPanelW = 320.0;
constexpr double kGap = 14.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace

std::string figure_svg(const std::vector<FigurePanel> &panels) {
  const double panel_h = kPanelW * (kX2Max - kX2Min) / (kX1Max - kX1Min);
  const double total_w =
      panels.empty() ? kPanelW
                     : panels.size() * kPanelW + (panels.size() - 1) * kGap;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         num(total_w) + "\" height=\"" + num(panel_h) + "\" viewBox=\"0 0 " +
         num(total_w) + " " + num(panel_h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (size_t pi = 0; pi < panels.size(); ++pi) {
    const FigurePanel &panel = panels[pi];
    const double ox = pi * (kPanelW + kGap);
    auto sx = [&](double x1) {
      return ox + (x1 - kX1Min) / (kX1Max - kX1Min) * kPanelW;
    };
    auto sy = [&](double x2) {
      return (kX2Max - x2) / (kX2Max - kX2Min) * panel_h;
    };

    svg += "<g class=\"panel\">\n";
    svg += "<clipPath id=\"clip" + std::to_string(pi) + "\"><rect x=\"" +
           num(ox) + "\" y=\"0\" width=\"" + num(kPanelW) + "\" height=\"" +
           num(panel_h) + "\"/></clipPath>\n";
    svg += "<rect x=\"" + num(ox) + "\" y=\"0\" width=\"" + num(kPanelW) +
           "\" height=\"" + num(panel_h) +
           "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg += "<g clip-path=\"url(#clip" + std::to_string(pi) + ")\">\n";

    for (const FigureCurve &curve : panel.curves) {
      const char *color = curve.alienated ? "#888888"
                          : curve.b > 0.0 ? "#1f77b4"
                                          : "#d62728";
      svg += "<polyline fill=\"none\" stroke=\"";
      svg += color;
      svg += "\" stroke-width=\"1\"";
      if (curve.alienated)
        svg += " stroke-dasharray=\"6,4\"";
      svg += " points=\"";
      for (const Point2 &p : curve.points) {
        svg += num(sx(p.x1)) + "," + num(sy(p.x2)) + " ";
      }
      svg += "\"/>\n";
    }

    // base point and the two focusing points
    svg += "<circle cx=\"" + num(sx(panel.base.x1)) + "\" cy=\"" +
           num(sy(panel.base.x2)) + "\" r=\"3\" fill=\"black\"/>\n";
    for (const Point2 *f : {&panel.focus_up, &panel.focus_down})
      svg += "<circle cx=\"" + num(sx(f->x1)) + "\" cy=\"" + num(sy(f->x2)) +
             "\" r=\"3\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";

    svg += "<text x=\"" + num(ox + 8) + "\" y=\"16\" font-size=\"12\" "
           "font-family=\"sans-serif\">base (" +
           num(panel.base.x1) + ", " + num(panel.base.x2) + ")</text>\n";
    svg += "</g>\n</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace affine
