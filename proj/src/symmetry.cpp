#include "affine/symmetry.hpp"

#include <Eigen/Dense>

#include <cstdio>

namespace affine {

namespace {

// fiber basis functions g1 = e^{c x2} cos x2, g2 = e^{c x2} sin x2 and their
// first two x2-derivatives
struct Fiber {
  double g1, g2, dg1, dg2, ddg1, ddg2;
};

Fiber fiber_at(double c, double x2) {
  const double e = std::exp(c * x2);
  const double cs = std::cos(x2), sn = std::sin(x2);
  Fiber f;
  f.g1 = e * cs;
  f.g2 = e * sn;
  f.dg1 = e * (c * cs - sn);
  f.dg2 = e * (c * sn + cs);
  f.ddg1 = e * ((c * c - 1.0) * cs - 2.0 * c * sn);
  f.ddg2 = e * ((c * c - 1.0) * sn + 2.0 * c * cs);
  return f;
}

} // namespace

Point2 apply_T(const AffineMapParams &p, double c, const Point2 &x) {
  const Fiber f = fiber_at(c, x.x2);
  return Point2{p.sign * std::exp(p.alpha) * x.x1 + p.beta * f.g1 +
                    p.gamma * f.g2,
                x.x2 + p.delta};
}

std::array<double, 2> apply_T_velocity(const AffineMapParams &p, double c,
                                       const Point2 &x,
                                       const std::array<double, 2> &vel) {
  const Fiber f = fiber_at(c, x.x2);
  const double j11 = p.sign * std::exp(p.alpha);
  const double j12 = p.beta * f.dg1 + p.gamma * f.dg2;
  return {j11 * vel[0] + j12 * vel[1], vel[1]};
}

AffineMapParams compose_T(const AffineMapParams &p, const AffineMapParams &q,
                          double c) {
  const double ed = std::exp(c * q.delta);
  const double cs = std::cos(q.delta), sn = std::sin(q.delta);
  AffineMapParams r;
  r.alpha = p.alpha + q.alpha;
  r.sign = p.sign * q.sign;
  r.beta = p.sign * std::exp(p.alpha) * q.beta + ed * (p.beta * cs + p.gamma * sn);
  r.gamma =
      p.sign * std::exp(p.alpha) * q.gamma + ed * (-p.beta * sn + p.gamma * cs);
  r.delta = p.delta + q.delta;
  return r;
}

AffineMapParams invert_T(const AffineMapParams &p, double c) {
  const double e = std::exp(-p.alpha - c * p.delta);
  const double cs = std::cos(p.delta), sn = std::sin(p.delta);
  AffineMapParams r;
  r.alpha = -p.alpha;
  r.delta = -p.delta;
  r.sign = p.sign;
  r.beta = -p.sign * e * (p.beta * cs - p.gamma * sn);
  r.gamma = -p.sign * e * (p.beta * sn + p.gamma * cs);
  return r;
}

double params_distance(const AffineMapParams &p, const AffineMapParams &q) {
  double d = std::max(std::max(std::fabs(p.alpha - q.alpha),
                               std::fabs(p.beta - q.beta)),
                      std::max(std::fabs(p.gamma - q.gamma),
                               std::fabs(p.delta - q.delta)));
  if (p.sign != q.sign)
    d = std::max(d, 1.0);
  return d;
}

std::string format_T(const AffineMapParams &p) {
  char buf[200];
  if (p.sign == +1)
    std::snprintf(buf, sizeof(buf), "T(%.17g,%.17g,%.17g,%.17g)", p.alpha,
                  p.beta, p.gamma, p.delta);
  else
    std::snprintf(buf, sizeof(buf), "T(%.17g,%.17g,%.17g,%.17g,-1)", p.alpha,
                  p.beta, p.gamma, p.delta);
  return buf;
}

std::optional<AffineMapParams> parse_T(std::string_view text) {
  std::string s(text);
  AffineMapParams p;
  double sign = 1.0;
  int n = std::sscanf(s.c_str(), " T(%lf,%lf,%lf,%lf,%lf)", &p.alpha, &p.beta,
                      &p.gamma, &p.delta, &sign);
  if (n < 4)
    return std::nullopt;
  if (n == 5) {
    if (sign != 1.0 && sign != -1.0)
      return std::nullopt;
    p.sign = sign > 0 ? +1 : -1;
  }
  return p;
}

ChartMap chart_of(const AffineMapParams &p, double c) {
  ChartMap m;
  m.forward = [p, c](const Point2 &x) { return apply_T(p, c, x); };
  m.jacobian = [p, c](const Point2 &x) {
    const Fiber f = fiber_at(c, x.x2);
    return std::array<std::array<double, 2>, 2>{
        {{p.sign * std::exp(p.alpha), p.beta * f.dg1 + p.gamma * f.dg2},
         {0.0, 1.0}}};
  };
  m.second = [p, c](const Point2 &x) {
    const Fiber f = fiber_at(c, x.x2);
    std::array<std::array<std::array<double, 2>, 2>, 2> s{};
    s[0][1][1] = p.beta * f.ddg1 + p.gamma * f.ddg2;
    return s;
  };
  m.inverse = [q = invert_T(p, c), c](const Point2 &x) {
    return apply_T(q, c, x);
  };
  m.label = format_T(p);
  return m;
}

AffineMapParams transitivity_witness(double c, const Point2 &from,
                                     const Point2 &to) {
  AffineMapParams p;
  p.delta = to.x2 - from.x2;
  const Fiber f = fiber_at(c, from.x2);
  const double need = to.x1 - from.x1; // after e^0 x1, still need this much
  if (std::fabs(f.g1) >= std::fabs(f.g2))
    p.beta = need / f.g1;
  else
    p.gamma = need / f.g2;
  return p;
}

VectorField2 lincomb(const std::vector<std::pair<double, VectorField2>> &terms) {
  VectorField2 r;
  r.value = [terms](const Point2 &p) {
    std::array<double, 2> v{};
    for (const auto &[w, f] : terms) {
      const auto fv = f.value(p);
      v[0] += w * fv[0];
      v[1] += w * fv[1];
    }
    return v;
  };
  r.jac = [terms](const Point2 &p) {
    std::array<std::array<double, 2>, 2> j{};
    for (const auto &[w, f] : terms) {
      const auto fj = f.jac(p);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          j[i][k] += w * fj[i][k];
    }
    return j;
  };
  r.second = [terms](const Point2 &p) {
    std::array<std::array<std::array<double, 2>, 2>, 2> s{};
    for (const auto &[w, f] : terms) {
      const auto fs = f.second(p);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            s[i][j][k] += w * fs[i][j][k];
    }
    return s;
  };
  r.label = "lincomb";
  return r;
}

std::vector<VectorField2> killing_basis(double c) {
  std::vector<VectorField2> basis;

  // f1, f2: g(x2) d1 with g the fiber cos/sin functions
  for (int which = 0; which < 2; ++which) {
    VectorField2 f;
    f.value = [c, which](const Point2 &p) {
      const Fiber fb = fiber_at(c, p.x2);
      return std::array<double, 2>{which == 0 ? fb.g1 : fb.g2, 0.0};
    };
    f.jac = [c, which](const Point2 &p) {
      const Fiber fb = fiber_at(c, p.x2);
      std::array<std::array<double, 2>, 2> j{};
      j[1][0] = which == 0 ? fb.dg1 : fb.dg2; // d2 X^1
      return j;
    };
    f.second = [c, which](const Point2 &p) {
      const Fiber fb = fiber_at(c, p.x2);
      std::array<std::array<std::array<double, 2>, 2>, 2> s{};
      s[1][1][0] = which == 0 ? fb.ddg1 : fb.ddg2; // d2 d2 X^1
      return s;
    };
    f.label = which == 0 ? "e^{cx2} cos(x2) d1" : "e^{cx2} sin(x2) d1";
    basis.push_back(std::move(f));
  }

  VectorField2 f3;
  f3.value = [](const Point2 &p) { return std::array<double, 2>{p.x1, 0.0}; };
  f3.jac = [](const Point2 &) {
    std::array<std::array<double, 2>, 2> j{};
    j[0][0] = 1.0;
    return j;
  };
  f3.second = [](const Point2 &) {
    return std::array<std::array<std::array<double, 2>, 2>, 2>{};
  };
  f3.label = "x1 d1";
  basis.push_back(std::move(f3));

  VectorField2 f4;
  f4.value = [](const Point2 &) { return std::array<double, 2>{0.0, 1.0}; };
  f4.jac = [](const Point2 &) {
    return std::array<std::array<double, 2>, 2>{};
  };
  f4.second = [](const Point2 &) {
    return std::array<std::array<std::array<double, 2>, 2>, 2>{};
  };
  f4.label = "d2";
  basis.push_back(std::move(f4));

  return basis;
}

CubicForm2 killing_residual(const ConnectionField &conn, const VectorField2 &X,
                            const Point2 &p) {
  const ChristoffelValue g = christoffel_at(conn, p);
  const ChristoffelPartials dg = christoffel_partials_at(conn, p);
  const auto xv = X.value(p);
  const auto xj = X.jac(p);
  const auto xs = X.second(p);
  CubicForm2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double v = xs[i][j][k];
        for (int m = 0; m < 2; ++m) {
          v += xv[m] * dg.d[m][i][j][k];
          v -= g.g[i][j][m] * xj[m][k];
          v += g.g[m][j][k] * xj[i][m];
          v += g.g[i][m][k] * xj[j][m];
        }
        r.t[i][j][k] = v;
      }
  return r;
}

VectorField2 bracket(const VectorField2 &X, const VectorField2 &Y) {
  VectorField2 r;
  r.value = [xv = X.value, xj = X.jac, yv = Y.value,
             yj = Y.jac](const Point2 &p) {
    const auto x = xv(p);
    const auto y = yv(p);
    const auto dx = xj(p);
    const auto dy = yj(p);
    std::array<double, 2> out{};
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i)
        out[j] += x[i] * dy[i][j] - y[i] * dx[i][j];
    return out;
  };
  r.jac = [xv = X.value, xj = X.jac, xs = X.second, yv = Y.value, yj = Y.jac,
           ys = Y.second](const Point2 &p) {
    const auto x = xv(p);
    const auto y = yv(p);
    const auto dx = xj(p);
    const auto dy = yj(p);
    const auto sx = xs(p);
    const auto sy = ys(p);
    std::array<std::array<double, 2>, 2> out{};
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) {
        double v = 0.0;
        for (int i = 0; i < 2; ++i)
          v += dx[k][i] * dy[i][j] + x[i] * sy[k][i][j] - dy[k][i] * dx[i][j] -
               y[i] * sx[k][i][j];
        out[k][j] = v;
      }
    return out;
  };
  // second partials would need third derivatives of the inputs; use central
  // differences of the analytic jacobian
  r.second = [jac = r.jac](const Point2 &p) {
    const double h = 1e-5;
    std::array<std::array<std::array<double, 2>, 2>, 2> s{};
    for (int i = 0; i < 2; ++i) {
      Point2 hi = p, lo = p;
      (i == 0 ? hi.x1 : hi.x2) += h;
      (i == 0 ? lo.x1 : lo.x2) -= h;
      const auto jp = jac(hi);
      const auto jm = jac(lo);
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          s[i][j][k] = (jp[j][k] - jm[j][k]) / (2.0 * h);
    }
    return s;
  };
  r.label = "[" + X.label + "," + Y.label + "]";
  return r;
}

double LieAlgebraTable::antisymmetry_defect() const {
  double d = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        d = std::max(d, std::fabs(c[i][j][k] + c[j][i][k]));
  return d;
}

double LieAlgebraTable::jacobi_defect() const {
  double d = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          double v = 0.0;
          for (int m = 0; m < dim; ++m)
            v += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] +
                 c[k][i][m] * c[m][j][l];
          d = std::max(d, std::fabs(v));
        }
  return d;
}

double max_table_diff(const LieAlgebraTable &a, const LieAlgebraTable &b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        d = std::max(d, std::fabs(a.c[i][j][k] - b.c[i][j][k]));
  return d;
}

LieAlgebraTable structure_constants(const std::vector<VectorField2> &basis,
                                    const std::vector<Point2> &samples,
                                    double fit_tol) {
  const int dim = static_cast<int>(basis.size());
  if (dim > 4)
    throw std::invalid_argument("structure_constants supports dim <= 4");
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 2 * dim)
    throw degenerate_samples_error("not enough samples to fit coefficients");

  // rows: both components at every sample; columns: basis fields
  Eigen::MatrixXd E(2 * n, dim);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (int j = 0; j < dim; ++j) {
      const auto v = basis[static_cast<size_t>(j)].value(samples[static_cast<size_t>(s)]);
      E(2 * s, j) = v[0];
      E(2 * s + 1, j) = v[1];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(E, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  if (svd.singularValues()(0) <= 0.0 ||
      svd.singularValues()(dim - 1) < 1e-10 * svd.singularValues()(0))
    throw degenerate_samples_error(
        "basis evaluations are rank deficient at the samples");

  LieAlgebraTable table;
  table.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const VectorField2 br = bracket(basis[static_cast<size_t>(i)],
                                      basis[static_cast<size_t>(j)]);
      Eigen::VectorXd rhs(2 * n);
      for (Eigen::Index s = 0; s < n; ++s) {
        const auto v = br.value(samples[static_cast<size_t>(s)]);
        rhs(2 * s) = v[0];
        rhs(2 * s + 1) = v[1];
      }
      const Eigen::VectorXd coef = svd.solve(rhs);
      const double resid = (E * coef - rhs).cwiseAbs().maxCoeff();
      if (resid > fit_tol)
        throw std::runtime_error(
            "bracket [" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
            "] does not close in the span (fit residual " +
            std::to_string(resid) + ")");
      for (int k = 0; k < dim; ++k) {
        table.c[i][j][k] = coef(k);
        table.c[j][i][k] = -coef(k);
      }
    }
  return table;
}

LieAlgebraTable a412_table() {
  LieAlgebraTable t;
  t.dim = 4;
  auto set = [&t](int i, int j, int k, double v) {
    t.c[i][j][k] = v;
    t.c[j][i][k] = -v;
  };
  set(0, 2, 0, 1.0);  // [e1,e3] = e1
  set(1, 2, 1, 1.0);  // [e2,e3] = e2
  set(0, 3, 1, -1.0); // [e1,e4] = -e2
  set(1, 3, 0, 1.0);  // [e2,e4] = e1
  return t;
}

LieAlgebraTable change_basis(const LieAlgebraTable &table,
                             const std::array<std::array<double, 4>, 4> &S) {
  const int dim = table.dim;
  Eigen::Matrix4d sm;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      sm(i, j) = S[static_cast<size_t>(i)][static_cast<size_t>(j)];
  const Eigen::Matrix4d sinv = sm.inverse();

  LieAlgebraTable out;
  out.dim = dim;
  // c'_ab^m = S_a^i S_b^j c_ij^k (S^-1)_k^m
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int m = 0; m < dim; ++m) {
        double v = 0.0;
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
              v += sm(a, i) * sm(b, j) * table.c[i][j][k] * sinv(k, m);
        out.c[a][b][m] = v;
      }
  return out;
}

} // namespace affine
