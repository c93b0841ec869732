#include "affine/catalog.hpp"

#include <Eigen/Dense>

#include "affine/rng.hpp"

namespace affine {

namespace {

std::array<double, 8> zero_ricci_partials(const Point2 &) {
  return std::array<double, 8>{};
}

ConnectionField mc_connection(double c) {
  ConnectionField conn;
  const double k = 1.0 + c * c;
  conn.eval = [k, c](const Point2 &p) {
    ChristoffelValue g;
    g.g[1][1][0] = k * p.x1;
    g.g[1][1][1] = 2.0 * c;
    return g;
  };
  conn.partials = [k](const Point2 &) {
    ChristoffelPartials d;
    d.d[0][1][1][0] = k; // d1 Gamma_22^1
    return d;
  };
  conn.ricci_partials = zero_ricci_partials; // rho is constant
  conn.label = "Mc(c=" + std::to_string(c) + ")";
  return conn;
}

ConnectionField constant_connection(const ChristoffelValue &g,
                                    std::string label) {
  ConnectionField conn;
  conn.eval = [g](const Point2 &) { return g; };
  conn.partials = [](const Point2 &) { return ChristoffelPartials{}; };
  conn.ricci_partials = zero_ricci_partials;
  conn.label = std::move(label);
  return conn;
}

// e^{c x2} cos(x2 + phase), phase 0 or -pi/2 for the cos/sin pair
ScalarField exp_trig_field(double c, bool sine) {
  ScalarField f;
  auto parts = [c, sine](double x2) {
    const double e = std::exp(c * x2);
    const double tr = sine ? std::sin(x2) : std::cos(x2);
    const double dtr = sine ? std::cos(x2) : -std::sin(x2);
    // value, d/dx2, d2/dx2^2
    const double v = e * tr;
    const double d = e * (c * tr + dtr);
    const double dd = e * ((c * c - 1.0) * tr + 2.0 * c * dtr);
    return std::array<double, 3>{v, d, dd};
  };
  f.value = [parts](const Point2 &p) { return parts(p.x2)[0]; };
  f.grad = [parts](const Point2 &p) {
    return std::array<double, 2>{0.0, parts(p.x2)[1]};
  };
  f.hess = [parts](const Point2 &p) {
    return std::array<double, 3>{0.0, 0.0, parts(p.x2)[2]};
  };
  f.label = std::string(sine ? "e^{cx2} sin(x2)" : "e^{cx2} cos(x2)");
  return f;
}

// e^{a.x} for integer-ish exponent vectors (Z3 basis)
ScalarField exp_linear_field(double a1, double a2, std::string label) {
  ScalarField f;
  f.value = [a1, a2](const Point2 &p) { return std::exp(a1 * p.x1 + a2 * p.x2); };
  f.grad = [a1, a2](const Point2 &p) {
    const double e = std::exp(a1 * p.x1 + a2 * p.x2);
    return std::array<double, 2>{a1 * e, a2 * e};
  };
  f.hess = [a1, a2](const Point2 &p) {
    const double e = std::exp(a1 * p.x1 + a2 * p.x2);
    return std::array<double, 3>{a1 * a1 * e, a1 * a2 * e, a2 * a2 * e};
  };
  f.label = std::move(label);
  return f;
}

} // namespace

SurfaceFamily make_surface(FamilyKind kind, double c) {
  if ((kind == FamilyKind::Mc || kind == FamilyKind::M0c) && c < 0.0)
    throw std::invalid_argument(
        "negative c is not part of the catalog; reflect x2 -> -x2 to swap "
        "the sign of c and use c >= 0");
  SurfaceFamily s;
  s.kind = kind;
  s.c = c;
  switch (kind) {
  case FamilyKind::Mc: {
    s.conn = mc_connection(c);
    s.qe_basis = {exp_trig_field(c, false), exp_trig_field(c, true),
                  coordinate_field(0)};
    s.id = "Mc:" + std::to_string(c);
    break;
  }
  case FamilyKind::M0c: {
    ChristoffelValue g;
    g.g[0][0][0] = 1.0;
    g.g[1][1][0] = 1.0 + c * c;
    g.g[1][1][1] = 2.0 * c;
    s.conn = constant_connection(g, "M0c(c=" + std::to_string(c) + ")");
    s.qe_basis = {exp_trig_field(c, false), exp_trig_field(c, true),
                  exp_linear_field(1.0, 0.0, "e^{x1}")};
    s.id = "M0c:" + std::to_string(c);
    break;
  }
  case FamilyKind::Z3: {
    // symbol order (G_11^1, G_11^2, G_12^1, G_12^2, G_22^1, G_22^2)
    const double third = 1.0 / 3.0;
    ChristoffelValue g;
    g.g[0][0][0] = third;
    g.g[0][0][1] = -2.0 * third;
    g.g[0][1][0] = g.g[1][0][0] = -third;
    g.g[0][1][1] = g.g[1][0][1] = -third;
    g.g[1][1][0] = -2.0 * third;
    g.g[1][1][1] = third;
    s.conn = constant_connection(g, "Z3");
    s.qe_basis = {exp_linear_field(1.0, 0.0, "e^{x1}"),
                  exp_linear_field(0.0, 1.0, "e^{x2}"),
                  exp_linear_field(-1.0, -1.0, "e^{-x1-x2}")};
    s.c = 0.0;
    s.id = "Z3";
    break;
  }
  case FamilyKind::Flat: {
    s.conn = constant_connection(ChristoffelValue{}, "flat");
    s.qe_basis = {constant_field(1.0), coordinate_field(0),
                  coordinate_field(1)};
    s.c = 0.0;
    s.id = "flat";
    break;
  }
  case FamilyKind::Custom:
    throw std::invalid_argument("custom surfaces are built directly");
  }
  return s;
}

SurfaceFamily surface_from_id(std::string_view id) {
  if (id == "Z3")
    return make_surface(FamilyKind::Z3);
  if (id == "flat")
    return make_surface(FamilyKind::Flat);
  auto parse_c = [&](std::string_view rest) {
    try {
      return std::stod(std::string(rest));
    } catch (const std::exception &) {
      throw std::invalid_argument("bad surface id: " + std::string(id));
    }
  };
  if (id.rfind("Mc:", 0) == 0)
    return make_surface(FamilyKind::Mc, parse_c(id.substr(3)));
  if (id.rfind("M0c:", 0) == 0)
    return make_surface(FamilyKind::M0c, parse_c(id.substr(4)));
  throw std::invalid_argument("unknown surface id: " + std::string(id) +
                              " (expected Mc:<c>, M0c:<c>, Z3, flat)");
}

ChartMap compose_charts(const ChartMap &phi, const ChartMap &psi) {
  ChartMap m;
  m.forward = [pf = phi.forward, qf = psi.forward](const Point2 &x) {
    return pf(qf(x));
  };
  m.jacobian = [pj = phi.jacobian, qf = psi.forward,
                qj = psi.jacobian](const Point2 &x) {
    const auto a = pj(qf(x)); // dPhi at Psi(x)
    const auto b = qj(x);
    std::array<std::array<double, 2>, 2> j{};
    for (int mdim = 0; mdim < 2; ++mdim)
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l)
          j[mdim][i] += a[mdim][l] * b[l][i];
    return j;
  };
  m.second = [pf = phi.forward, pj = phi.jacobian, ps = phi.second,
              qf = psi.forward, qj = psi.jacobian,
              qs = psi.second](const Point2 &x) {
    const Point2 y = qf(x);
    const auto ja = pj(y);
    const auto sa = ps(y);
    const auto jb = qj(x);
    const auto sb = qs(x);
    std::array<std::array<std::array<double, 2>, 2>, 2> r{};
    // d_i d_j (Phi o Psi)^m = (d_k d_l Phi^m) Psi^k_i Psi^l_j
    //                       + (d_l Phi^m) d_i d_j Psi^l
    for (int mm = 0; mm < 2; ++mm)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double v = 0.0;
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              v += sa[mm][k][l] * jb[k][i] * jb[l][j];
          for (int l = 0; l < 2; ++l)
            v += ja[mm][l] * sb[l][i][j];
          r[mm][i][j] = v;
        }
    return r;
  };
  if (phi.inverse && psi.inverse)
    m.inverse = [pi = phi.inverse, qi = psi.inverse](const Point2 &x) {
      return qi(pi(x));
    };
  m.domain = psi.domain;
  m.label = phi.label + " o " + psi.label;
  return m;
}

ChartMap identity_chart() {
  ChartMap m;
  m.forward = [](const Point2 &x) { return x; };
  m.jacobian = [](const Point2 &) {
    return std::array<std::array<double, 2>, 2>{{{1.0, 0.0}, {0.0, 1.0}}};
  };
  m.second = [](const Point2 &) {
    return std::array<std::array<std::array<double, 2>, 2>, 2>{};
  };
  m.inverse = [](const Point2 &x) { return x; };
  m.label = "id";
  return m;
}

ChartMap exp_chart() {
  ChartMap m;
  m.forward = [](const Point2 &u) { return Point2{std::exp(u.x1), u.x2}; };
  m.jacobian = [](const Point2 &u) {
    return std::array<std::array<double, 2>, 2>{
        {{std::exp(u.x1), 0.0}, {0.0, 1.0}}};
  };
  m.second = [](const Point2 &u) {
    std::array<std::array<std::array<double, 2>, 2>, 2> s{};
    s[0][0][0] = std::exp(u.x1);
    return s;
  };
  m.inverse = [](const Point2 &x) {
    if (x.x1 <= 0.0)
      throw chart_domain_error("exp chart image requires x1 > 0");
    return Point2{std::log(x.x1), x.x2};
  };
  m.label = "Phi(u)=(e^{u1},u2)";
  return m;
}

ChartMap log_chart() {
  ChartMap m;
  m.forward = [](const Point2 &x) {
    if (x.x1 <= 0.0)
      throw chart_domain_error("log chart requires x1 > 0");
    return Point2{std::log(x.x1), x.x2};
  };
  m.jacobian = [](const Point2 &x) {
    return std::array<std::array<double, 2>, 2>{{{1.0 / x.x1, 0.0}, {0.0, 1.0}}};
  };
  m.second = [](const Point2 &x) {
    std::array<std::array<std::array<double, 2>, 2>, 2> s{};
    s[0][0][0] = -1.0 / (x.x1 * x.x1);
    return s;
  };
  m.inverse = [](const Point2 &u) { return Point2{std::exp(u.x1), u.x2}; };
  m.domain = [](const Point2 &x) { return x.x1 > 0.0; };
  m.label = "log chart (x1 > 0)";
  return m;
}

ChartMap shear_chart(double c) {
  ChartMap m;
  m.forward = [c](const Point2 &x) {
    return Point2{std::exp(c * x.x2) * x.x1, x.x2};
  };
  m.jacobian = [c](const Point2 &x) {
    const double e = std::exp(c * x.x2);
    return std::array<std::array<double, 2>, 2>{{{e, c * e * x.x1}, {0.0, 1.0}}};
  };
  m.second = [c](const Point2 &x) {
    const double e = std::exp(c * x.x2);
    std::array<std::array<std::array<double, 2>, 2>, 2> s{};
    s[0][0][1] = s[0][1][0] = c * e;
    s[0][1][1] = c * c * e * x.x1;
    return s;
  };
  m.inverse = [c](const Point2 &y) {
    return Point2{std::exp(-c * y.x2) * y.x1, y.x2};
  };
  m.label = "phi(x)=(e^{c x2} x1, x2)";
  return m;
}

ChartMap linear_chart(const std::array<std::array<double, 2>, 2> &a,
                      std::string label) {
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (std::fabs(det) < 1e-300)
    throw singular_jacobian_error("linear chart is singular");
  const std::array<std::array<double, 2>, 2> inv{
      {{a[1][1] / det, -a[0][1] / det}, {-a[1][0] / det, a[0][0] / det}}};
  ChartMap m;
  m.forward = [a](const Point2 &x) {
    return Point2{a[0][0] * x.x1 + a[0][1] * x.x2,
                  a[1][0] * x.x1 + a[1][1] * x.x2};
  };
  m.jacobian = [a](const Point2 &) { return a; };
  m.second = [](const Point2 &) {
    return std::array<std::array<std::array<double, 2>, 2>, 2>{};
  };
  m.inverse = [inv](const Point2 &y) {
    return Point2{inv[0][0] * y.x1 + inv[0][1] * y.x2,
                  inv[1][0] * y.x1 + inv[1][1] * y.x2};
  };
  m.label = std::move(label);
  return m;
}

ConnectionField pullback_connection(const ConnectionField &conn,
                                    const ChartMap &map) {
  ConnectionField out;
  out.eval = [base = conn, map](const Point2 &x) {
    const auto j = map.jacobian(x);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (std::fabs(det) < 1e-300)
      throw singular_jacobian_error("pullback: singular jacobian of " +
                                    map.label);
    const std::array<std::array<double, 2>, 2> jinv{
        {{j[1][1] / det, -j[0][1] / det}, {-j[1][0] / det, j[0][0] / det}}};
    const auto s = map.second(x);
    const ChristoffelValue g = christoffel_at(base, map.forward(x));
    ChristoffelValue out_g;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj)
        for (int k = 0; k < 2; ++k) {
          double v = 0.0;
          for (int l = 0; l < 2; ++l) {
            double inner = s[l][i][jj];
            for (int mm = 0; mm < 2; ++mm)
              for (int nn = 0; nn < 2; ++nn)
                inner += g.g[mm][nn][l] * j[mm][i] * j[nn][jj];
            v += jinv[k][l] * inner;
          }
          out_g.g[i][jj][k] = v;
        }
    return out_g;
  };
  // derivatives of the transformed symbols would need third partials of the
  // chart; finite differences of eval() are used instead
  out.partials = nullptr;
  if (map.domain || conn.domain)
    out.domain = [mdom = map.domain, cdom = conn.domain,
                  fwd = map.forward](const Point2 &x) {
      if (mdom && !mdom(x))
        return false;
      return !cdom || cdom(fwd(x));
    };
  out.label = map.label + "* " + conn.label;
  return out;
}

ScalarField pullback_field(const ScalarField &f, const ChartMap &map) {
  ScalarField r;
  r.value = [fv = f.value, fwd = map.forward](const Point2 &x) {
    return fv(fwd(x));
  };
  r.grad = [fg = f.grad, fwd = map.forward, jac = map.jacobian](const Point2 &x) {
    const auto d = fg(fwd(x));
    const auto j = jac(x);
    return std::array<double, 2>{d[0] * j[0][0] + d[1] * j[1][0],
                                 d[0] * j[0][1] + d[1] * j[1][1]};
  };
  r.hess = [fg = f.grad, fh = f.hess, fwd = map.forward, jac = map.jacobian,
            sec = map.second](const Point2 &x) {
    const Point2 y = fwd(x);
    const auto d = fg(y);
    const auto h = fh(y);
    const double hm[2][2] = {{h[0], h[1]}, {h[1], h[2]}};
    const auto j = jac(x);
    const auto s = sec(x);
    std::array<double, 3> out{};
    int slot = 0;
    for (int i = 0; i < 2; ++i)
      for (int jj = i; jj < 2; ++jj) {
        double v = 0.0;
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l)
            v += hm[k][l] * j[k][i] * j[l][jj];
          v += d[k] * s[k][i][jj];
        }
        out[slot++] = v;
      }
    return out;
  };
  r.label = f.label + " o " + map.label;
  return r;
}

ConnectionField projective_modify(const ConnectionField &conn,
                                  const ScalarField &f) {
  ConnectionField out;
  out.eval = [base_eval = conn.eval, fg = f.grad](const Point2 &p) {
    ChristoffelValue g = base_eval(p);
    const auto d = fg(p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g.g[i][j][i] += d[j];
        g.g[i][j][j] += d[i];
      }
    return g;
  };
  if (conn.partials)
    out.partials = [base_partials = conn.partials, fh = f.hess](const Point2 &p) {
      ChristoffelPartials d = base_partials(p);
      const auto h = fh(p);
      const double hm[2][2] = {{h[0], h[1]}, {h[1], h[2]}};
      for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            d.d[m][i][j][i] += hm[m][j];
            d.d[m][i][j][j] += hm[m][i];
          }
      return d;
    };
  out.domain = conn.domain;
  out.label = conn.label + " +proj(" + f.label + ")";
  return out;
}

namespace {

int numeric_rank(const Eigen::MatrixXd &m, double rel_tol, double *sigma_max) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto &sv = svd.singularValues();
  if (sv.size() == 0)
    return 0;
  if (sigma_max)
    *sigma_max = sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0))
      ++rank;
  return rank;
}

} // namespace

bool qe_span_equal(const std::vector<ScalarField> &basis_a,
                   const std::vector<ScalarField> &basis_b,
                   const std::vector<Point2> &samples, double rel_tol) {
  const auto ka = static_cast<Eigen::Index>(basis_a.size());
  const auto kb = static_cast<Eigen::Index>(basis_b.size());
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 6)
    throw degenerate_samples_error("span test needs at least 6 sample points");
  Eigen::MatrixXd ma(n, ka), mb(n, kb);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < ka; ++j)
      ma(i, j) = basis_a[static_cast<size_t>(j)].value(samples[static_cast<size_t>(i)]);
    for (Eigen::Index j = 0; j < kb; ++j)
      mb(i, j) = basis_b[static_cast<size_t>(j)].value(samples[static_cast<size_t>(i)]);
  }
  if (numeric_rank(ma, rel_tol, nullptr) < ka ||
      numeric_rank(mb, rel_tol, nullptr) < kb)
    throw degenerate_samples_error(
        "sampled basis evaluations are rank deficient; span test inconclusive");
  Eigen::MatrixXd joint(n, ka + kb);
  joint << ma, mb;
  const int r = numeric_rank(joint, rel_tol, nullptr);
  return r == ka && r == kb;
}

double span_residual(const std::vector<ScalarField> &funcs,
                     const std::vector<ScalarField> &basis,
                     const std::vector<Point2> &samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto kb = static_cast<Eigen::Index>(basis.size());
  if (n < kb + 3)
    throw degenerate_samples_error("span residual needs more sample points");
  Eigen::MatrixXd mb(n, kb);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < kb; ++j)
      mb(i, j) = basis[static_cast<size_t>(j)].value(samples[static_cast<size_t>(i)]);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(mb);
  double worst = 0.0;
  for (const ScalarField &f : funcs) {
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i)
      rhs(i) = f.value(samples[static_cast<size_t>(i)]);
    const Eigen::VectorXd coef = qr.solve(rhs);
    const double norm = rhs.norm();
    const double resid = (mb * coef - rhs).norm();
    worst = std::max(worst, norm > 0.0 ? resid / norm : resid);
  }
  return worst;
}

std::array<std::array<int, 2>, 2> z3_rotation() {
  return {{{0, -1}, {1, -1}}};
}

ChartMap z3_symmetry_chart() {
  // transpose of z3_rotation(): x -> (x2, -x1 - x2)
  return linear_chart({{{0.0, 1.0}, {-1.0, -1.0}}}, "Z3 symmetry");
}

std::vector<Point2> sample_points(int n, std::uint64_t seed, double lo,
                                  double hi) {
  Rng rng(seed);
  std::vector<Point2> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = rng.uniform(lo, hi);
    const double b = rng.uniform(lo, hi);
    pts.push_back(Point2{a, b});
  }
  return pts;
}

} // namespace affine
