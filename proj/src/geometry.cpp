#include "affine/geometry.hpp"

namespace affine {

ScalarField constant_field(double v) {
  ScalarField f;
  f.value = [v](const Point2 &) { return v; };
  f.grad = [](const Point2 &) { return std::array<double, 2>{0.0, 0.0}; };
  f.hess = [](const Point2 &) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
  f.label = std::to_string(v);
  return f;
}

ScalarField coordinate_field(int index) {
  ScalarField f;
  f.value = [index](const Point2 &p) { return index == 0 ? p.x1 : p.x2; };
  f.grad = [index](const Point2 &) {
    return index == 0 ? std::array<double, 2>{1.0, 0.0}
                      : std::array<double, 2>{0.0, 1.0};
  };
  f.hess = [](const Point2 &) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
  f.label = index == 0 ? "x1" : "x2";
  return f;
}

ScalarField scale_field(double s, const ScalarField &f) {
  ScalarField g;
  g.value = [s, fv = f.value](const Point2 &p) { return s * fv(p); };
  g.grad = [s, fg = f.grad](const Point2 &p) {
    auto d = fg(p);
    return std::array<double, 2>{s * d[0], s * d[1]};
  };
  g.hess = [s, fh = f.hess](const Point2 &p) {
    auto h = fh(p);
    return std::array<double, 3>{s * h[0], s * h[1], s * h[2]};
  };
  g.label = std::to_string(s) + "*(" + f.label + ")";
  return g;
}

ScalarField add_fields(const ScalarField &f, const ScalarField &g) {
  ScalarField r;
  r.value = [fv = f.value, gv = g.value](const Point2 &p) {
    return fv(p) + gv(p);
  };
  r.grad = [fg = f.grad, gg = g.grad](const Point2 &p) {
    auto a = fg(p), b = gg(p);
    return std::array<double, 2>{a[0] + b[0], a[1] + b[1]};
  };
  r.hess = [fh = f.hess, gh = g.hess](const Point2 &p) {
    auto a = fh(p), b = gh(p);
    return std::array<double, 3>{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  };
  r.label = "(" + f.label + ")+(" + g.label + ")";
  return r;
}

ScalarField multiply_fields(const ScalarField &f, const ScalarField &g) {
  ScalarField r;
  r.value = [fv = f.value, gv = g.value](const Point2 &p) {
    return fv(p) * gv(p);
  };
  r.grad = [fv = f.value, fg = f.grad, gv = g.value,
            gg = g.grad](const Point2 &p) {
    const double a = fv(p), b = gv(p);
    auto da = fg(p), db = gg(p);
    return std::array<double, 2>{da[0] * b + a * db[0], da[1] * b + a * db[1]};
  };
  r.hess = [fv = f.value, fg = f.grad, fh = f.hess, gv = g.value, gg = g.grad,
            gh = g.hess](const Point2 &p) {
    const double a = fv(p), b = gv(p);
    auto da = fg(p), db = gg(p);
    auto ha = fh(p), hb = gh(p);
    return std::array<double, 3>{
        ha[0] * b + 2.0 * da[0] * db[0] + a * hb[0],
        ha[1] * b + da[0] * db[1] + da[1] * db[0] + a * hb[1],
        ha[2] * b + 2.0 * da[1] * db[1] + a * hb[2]};
  };
  r.label = "(" + f.label + ")*(" + g.label + ")";
  return r;
}

ScalarField exp_of(const ScalarField &f) {
  ScalarField r;
  r.value = [fv = f.value](const Point2 &p) { return std::exp(fv(p)); };
  r.grad = [fv = f.value, fg = f.grad](const Point2 &p) {
    const double e = std::exp(fv(p));
    auto d = fg(p);
    return std::array<double, 2>{e * d[0], e * d[1]};
  };
  r.hess = [fv = f.value, fg = f.grad, fh = f.hess](const Point2 &p) {
    const double e = std::exp(fv(p));
    auto d = fg(p);
    auto h = fh(p);
    return std::array<double, 3>{e * (h[0] + d[0] * d[0]),
                                 e * (h[1] + d[0] * d[1]),
                                 e * (h[2] + d[1] * d[1])};
  };
  r.label = "exp(" + f.label + ")";
  return r;
}

ScalarField quadratic_field(const std::array<double, 6> &p) {
  ScalarField f;
  f.value = [p](const Point2 &q) {
    return p[0] + p[1] * q.x1 + p[2] * q.x2 + p[3] * q.x1 * q.x2 +
           p[4] * q.x1 * q.x1 + p[5] * q.x2 * q.x2;
  };
  f.grad = [p](const Point2 &q) {
    return std::array<double, 2>{p[1] + p[3] * q.x2 + 2.0 * p[4] * q.x1,
                                 p[2] + p[3] * q.x1 + 2.0 * p[5] * q.x2};
  };
  f.hess = [p](const Point2 &) {
    return std::array<double, 3>{2.0 * p[4], p[3], 2.0 * p[5]};
  };
  f.label = "quadratic";
  return f;
}

ConnectionField with_fd_partials(const ConnectionField &conn) {
  ConnectionField c = conn;
  c.partials = nullptr;
  c.ricci_partials = nullptr;
  c.label = conn.label + " (fd)";
  return c;
}

ChristoffelValue christoffel_at(const ConnectionField &conn, const Point2 &p) {
  if (!conn.in_domain(p))
    throw chart_domain_error("point (" + std::to_string(p.x1) + ", " +
                             std::to_string(p.x2) +
                             ") outside chart domain of " + conn.label);
  return conn.eval(p);
}

ChristoffelPartials christoffel_partials_at(const ConnectionField &conn,
                                            const Point2 &p) {
  if (!conn.in_domain(p))
    throw chart_domain_error("point outside chart domain of " + conn.label);
  if (conn.partials)
    return conn.partials(p);
  // central differences, O(h^2)
  const double h = conn.fd_step;
  ChristoffelPartials d;
  for (int m = 0; m < 2; ++m) {
    Point2 hi = p, lo = p;
    (m == 0 ? hi.x1 : hi.x2) += h;
    (m == 0 ? lo.x1 : lo.x2) -= h;
    const ChristoffelValue gp = conn.eval(hi);
    const ChristoffelValue gm = conn.eval(lo);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          d.d[m][i][j][k] = (gp.g[i][j][k] - gm.g[i][j][k]) / (2.0 * h);
  }
  return d;
}

Curvature4 curvature_at(const ConnectionField &conn, const Point2 &p) {
  const ChristoffelValue g = christoffel_at(conn, p);
  const ChristoffelPartials d = christoffel_partials_at(conn, p);
  Curvature4 R;
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

RicciPair ricci_at(const ConnectionField &conn, const Point2 &p) {
  const Curvature4 R = curvature_at(conn, p);
  RicciPair out;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      out.rho.m[j][k] = R.r[0][j][k][0] + R.r[1][j][k][1];
  out.rho_s = out.rho.symmetric_part();
  return out;
}

namespace {

std::array<double, 8> ricci_partials_fd(const ConnectionField &conn,
                                        const Point2 &p) {
  const double h = conn.fd_step;
  std::array<double, 8> d{}; // [m*4 + i*2 + j] = partial_m rho_ij
  for (int m = 0; m < 2; ++m) {
    Point2 hi = p, lo = p;
    (m == 0 ? hi.x1 : hi.x2) += h;
    (m == 0 ? lo.x1 : lo.x2) -= h;
    const BilinearForm2 rp = ricci_at(conn, hi).rho;
    const BilinearForm2 rm = ricci_at(conn, lo).rho;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        d[m * 4 + i * 2 + j] = (rp.m[i][j] - rm.m[i][j]) / (2.0 * h);
  }
  return d;
}

} // namespace

CubicForm2 nabla_ricci_at(const ConnectionField &conn, const Point2 &p) {
  const ChristoffelValue g = christoffel_at(conn, p);
  const BilinearForm2 rho = ricci_at(conn, p).rho;
  const std::array<double, 8> drho =
      conn.ricci_partials ? conn.ricci_partials(p) : ricci_partials_fd(conn, p);
  CubicForm2 nr;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double v = drho[k * 4 + i * 2 + j];
        for (int m = 0; m < 2; ++m)
          v -= g.g[k][i][m] * rho.m[m][j] + g.g[k][j][m] * rho.m[i][m];
        nr.t[i][j][k] = v;
      }
  return nr;
}

double alpha_invariant(const ConnectionField &conn, const Point2 &p) {
  const double rho22 = ricci_at(conn, p).rho.m[1][1];
  if (std::fabs(rho22) < 1e-14)
    throw division_by_zero_error("alpha invariant undefined: rho_22 = 0 for " +
                                 conn.label);
  const double nr222 = nabla_ricci_at(conn, p).t[1][1][1];
  return nr222 * nr222 / (rho22 * rho22 * rho22);
}

BilinearForm2 hessian(const ConnectionField &conn, const ScalarField &f,
                      const Point2 &p) {
  const ChristoffelValue g = christoffel_at(conn, p);
  const std::array<double, 2> df = f.grad(p);
  const std::array<double, 3> hf = f.hess(p);
  const double second[2][2] = {{hf[0], hf[1]}, {hf[1], hf[2]}};
  BilinearForm2 H;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double v = second[i][j];
      for (int k = 0; k < 2; ++k)
        v -= g.g[i][j][k] * df[k];
      H.m[i][j] = v;
    }
  return H;
}

BilinearForm2 quasi_einstein_residual(const ConnectionField &conn,
                                      const ScalarField &f, const Point2 &p) {
  const BilinearForm2 H = hessian(conn, f, p);
  const BilinearForm2 rho_s = ricci_at(conn, p).rho_s;
  const double fv = f.value(p);
  BilinearForm2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.m[i][j] = H.m[i][j] + fv * rho_s.m[i][j];
  return r;
}

} // namespace affine
