// Test-only oracles: finite differences and brute-force expansions that stay
// independent of the analytic code paths they check.

#ifndef AFFINE_TESTS_ORACLES_HPP
#define AFFINE_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <functional>

#include "affine/geometry.hpp"

namespace oracle {

// central difference of a scalar function of one variable
inline double diff1(const std::function<double(double)> &f, double x,
                    double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// central second difference
inline double diff2(const std::function<double(double)> &f, double x,
                    double h = 1e-4) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// gradient of a scalar field by central differences
inline std::array<double, 2> fd_grad(
    const std::function<double(const affine::Point2 &)> &f,
    const affine::Point2 &p, double h = 1e-5) {
  return {diff1([&](double x) { return f({x, p.x2}); }, p.x1, h),
          diff1([&](double x) { return f({p.x1, x}); }, p.x2, h)};
}

// curvature assembled directly from finite differences of the Christoffel
// evaluation function, bypassing the ConnectionField partials machinery
inline affine::Curvature4 fd_curvature(const affine::ConnectionField &conn,
                                       const affine::Point2 &p,
                                       double h = 1e-5) {
  affine::ChristoffelPartials d;
  for (int m = 0; m < 2; ++m) {
    affine::Point2 hi = p, lo = p;
    (m == 0 ? hi.x1 : hi.x2) += h;
    (m == 0 ? lo.x1 : lo.x2) -= h;
    const affine::ChristoffelValue gp = conn.eval(hi);
    const affine::ChristoffelValue gm = conn.eval(lo);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          d.d[m][i][j][k] = (gp.g[i][j][k] - gm.g[i][j][k]) / (2.0 * h);
  }
  const affine::ChristoffelValue g = conn.eval(p);
  affine::Curvature4 R;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          double v = d.d[i][j][k][l] - d.d[j][i][k][l];
          for (int m = 0; m < 2; ++m)
            v += g.g[i][m][l] * g.g[j][k][m] - g.g[j][m][l] * g.g[i][k][m];
          R.r[i][j][k][l] = v;
        }
  return R;
}

} // namespace oracle

#endif
