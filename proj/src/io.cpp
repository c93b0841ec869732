#include "affine/io.hpp"

#include <cstdio>

namespace affine {

std::string fmt_g(double v, int digits) {
  if (v == 0.0)
    v = 0.0; // drop the sign of -0
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string format_matrix(const BilinearForm2 &m, int digits) {
  std::string out = "[";
  for (int i = 0; i < 2; ++i) {
    out += i == 0 ? "[" : ",[";
    out += fmt_g(m.m[i][0], digits) + "," + fmt_g(m.m[i][1], digits) + "]";
  }
  return out + "]";
}

std::string format_cubic(const CubicForm2 &t, int digits) {
  std::string out = "[";
  for (int i = 0; i < 2; ++i) {
    out += i == 0 ? "[" : ",[";
    for (int j = 0; j < 2; ++j) {
      out += j == 0 ? "[" : ",[";
      out += fmt_g(t.t[i][j][0], digits) + "," + fmt_g(t.t[i][j][1], digits) +
             "]";
    }
    out += "]";
  }
  return out + "]";
}

std::string format_christoffels(const ChristoffelValue &g, int digits) {
  CubicForm2 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        t.t[i][j][k] = g.g[i][j][k];
  return format_cubic(t, digits);
}

} // namespace affine
