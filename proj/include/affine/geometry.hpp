#ifndef AFFINE_GEOMETRY_HPP
#define AFFINE_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace affine {

// ---------------------------------------------------------------------------
// Errors

// Point outside the declared chart domain of a connection or chart map.
struct chart_domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// rho_22 vanishes where the alpha invariant needs to divide by it.
struct division_by_zero_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct singular_jacobian_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Sample set too degenerate for a span/rank decision.
struct degenerate_samples_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_implemented_error : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Value types

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
};

inline double distance(const Point2 &p, const Point2 &q) {
  return std::hypot(p.x1 - q.x1, p.x2 - q.x2);
}

// Christoffel symbols Gamma_ij^k at a point. Torsion-free connections have
// g[i][j][k] == g[j][i][k].
struct ChristoffelValue {
  double g[2][2][2] = {};

  double &operator()(int i, int j, int k) { return g[i][j][k]; }
  double operator()(int i, int j, int k) const { return g[i][j][k]; }

  double torsion_defect() const {
    double d = 0.0;
    for (int k = 0; k < 2; ++k)
      d = std::max(d, std::fabs(g[0][1][k] - g[1][0][k]));
    return d;
  }

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          m = std::max(m, std::fabs(g[i][j][k]));
    return m;
  }
};

// d[m][i][j][k] = partial_m Gamma_ij^k
struct ChristoffelPartials {
  double d[2][2][2][2] = {};
};

// r[i][j][k][l]: R(e_i, e_j) e_k = r[i][j][k][l] e_l
struct Curvature4 {
  double r[2][2][2][2] = {};

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            m = std::max(m, std::fabs(r[i][j][k][l]));
    return m;
  }
};

struct BilinearForm2 {
  double m[2][2] = {};

  double &operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  BilinearForm2 symmetric_part() const {
    BilinearForm2 s;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        s.m[i][j] = 0.5 * (m[i][j] + m[j][i]);
    return s;
  }

  BilinearForm2 transpose() const {
    BilinearForm2 t;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        t.m[i][j] = m[j][i];
    return t;
  }

  double max_abs() const {
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r = std::max(r, std::fabs(m[i][j]));
    return r;
  }
};

inline BilinearForm2 operator-(const BilinearForm2 &a, const BilinearForm2 &b) {
  BilinearForm2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.m[i][j] = a.m[i][j] - b.m[i][j];
  return c;
}

// t[i][j][k]; used both for nabla rho (derivative in the k slot) and for the
// Lie-derivative-of-connection residual (L_X nabla)_ij^k.
struct CubicForm2 {
  double t[2][2][2] = {};

  double &operator()(int i, int j, int k) { return t[i][j][k]; }
  double operator()(int i, int j, int k) const { return t[i][j][k]; }

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          m = std::max(m, std::fabs(t[i][j][k]));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Fields

// Scalar field with analytic first and second partials. Quasi-Einstein
// residuals are expected at the 1e-10 scale, which rules out numeric
// differentiation of user functions; every field carries its derivatives.
struct ScalarField {
  std::function<double(const Point2 &)> value;
  std::function<std::array<double, 2>(const Point2 &)> grad; // (d1 f, d2 f)
  std::function<std::array<double, 3>(const Point2 &)> hess; // (d11, d12, d22)
  std::string label;
};

ScalarField constant_field(double v);
ScalarField coordinate_field(int index); // 0 -> x1, 1 -> x2
ScalarField scale_field(double s, const ScalarField &f);
ScalarField add_fields(const ScalarField &f, const ScalarField &g);
ScalarField multiply_fields(const ScalarField &f, const ScalarField &g);
ScalarField exp_of(const ScalarField &f); // e^f with chain-rule partials
// p0 + p1*x1 + p2*x2 + p3*x1*x2 + p4*x1^2 + p5*x2^2
ScalarField quadratic_field(const std::array<double, 6> &p);

// A position-dependent torsion-free connection on a chart of R^2.
// `partials` is analytic when available; when absent, central finite
// differences of `eval` with step `fd_step` are used. `ricci_partials`
// (d[m][i][j] = partial_m rho_ij) short-circuits the nabla-rho derivative
// for families whose Ricci tensor is known in closed form.
struct ConnectionField {
  std::function<ChristoffelValue(const Point2 &)> eval;
  std::function<ChristoffelPartials(const Point2 &)> partials;
  std::function<bool(const Point2 &)> domain; // empty == all of R^2
  std::function<std::array<double, 8>(const Point2 &)> ricci_partials;
  std::string label;
  double fd_step = 1e-5;

  bool in_domain(const Point2 &p) const { return !domain || domain(p); }
};

// Same connection with the analytic derivative shortcuts removed; exercises
// the finite-difference path.
ConnectionField with_fd_partials(const ConnectionField &conn);

struct RicciPair {
  BilinearForm2 rho;
  BilinearForm2 rho_s;
};

// ---------------------------------------------------------------------------
// Tensor calculus

ChristoffelValue christoffel_at(const ConnectionField &conn, const Point2 &p);
ChristoffelPartials christoffel_partials_at(const ConnectionField &conn,
                                            const Point2 &p);

// R(e_i,e_j)e_k = (di G_jk^l - dj G_ik^l + G_im^l G_jk^m - G_jm^l G_ik^m) e_l
Curvature4 curvature_at(const ConnectionField &conn, const Point2 &p);

// rho(Y,Z) = Tr(X -> R(X,Y)Z). With the index convention above this is
// rho_jk = sum_i r[i][j][k][i]; it reproduces rho = (1+c^2) dx^2 (x) dx^2
// for the M(c) family.
RicciPair ricci_at(const ConnectionField &conn, const Point2 &p);

// (nabla rho)(e_i,e_j; e_k) = dk rho_ij - G_ki^m rho_mj - G_kj^m rho_im
CubicForm2 nabla_ricci_at(const ConnectionField &conn, const Point2 &p);

// (nabla rho(d2,d2;d2))^2 / rho(d2,d2)^3; throws division_by_zero_error when
// rho_22 vanishes.
double alpha_invariant(const ConnectionField &conn, const Point2 &p);

// Hf_ij = di dj f - G_ij^k dk f
BilinearForm2 hessian(const ConnectionField &conn, const ScalarField &f,
                      const Point2 &p);

// Hf + f * rho_s; zero iff f solves the quasi-Einstein equation at p.
BilinearForm2 quasi_einstein_residual(const ConnectionField &conn,
                                      const ScalarField &f, const Point2 &p);

} // namespace affine

#endif
