#ifndef AFFINE_SYMMETRY_HPP
#define AFFINE_SYMMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "affine/catalog.hpp"
#include "affine/geometry.hpp"

namespace affine {

// Element of the symmetry group of the Mc family (sign = +1), extended by
// the fiber reflection (sign = -1) that generates the Moebius deck map:
//   T(x1,x2) = (sign e^alpha x1 + beta e^{c x2} cos x2 + gamma e^{c x2} sin x2,
//               x2 + delta)
struct AffineMapParams {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
  int sign = +1;
};

inline AffineMapParams identity_params() { return {}; }

Point2 apply_T(const AffineMapParams &p, double c, const Point2 &x);
// Differential of T at x applied to a tangent vector.
std::array<double, 2> apply_T_velocity(const AffineMapParams &p, double c,
                                       const Point2 &x,
                                       const std::array<double, 2> &vel);

// Parameters of p o q (apply q first). The first slot composes additively:
// the slot multiplies x1 by e^alpha, so composition adds exponents.
AffineMapParams compose_T(const AffineMapParams &p, const AffineMapParams &q,
                          double c);
AffineMapParams invert_T(const AffineMapParams &p, double c);

// max over |alpha-alpha'|, |beta-beta'|, |gamma-gamma'|, |delta-delta'|,
// plus 1 when the signs differ
double params_distance(const AffineMapParams &p, const AffineMapParams &q);

// "T(alpha,beta,gamma,delta)" or "T(alpha,beta,gamma,delta,-1)"
std::string format_T(const AffineMapParams &p);
std::optional<AffineMapParams> parse_T(std::string_view text);

// T as a chart map with analytic first/second partials and exact inverse.
ChartMap chart_of(const AffineMapParams &p, double c);

// Group element carrying `from` to `to`: shift delta = to.x2 - from.x2, then
// match x1 with the fiber coefficient that is best conditioned at from.x2.
AffineMapParams transitivity_witness(double c, const Point2 &from,
                                     const Point2 &to);

// Vector field with analytic first and second partials.
// jac[i][j] = d_i X^j, second[i][j][k] = d_i d_j X^k.
struct VectorField2 {
  std::function<std::array<double, 2>(const Point2 &)> value;
  std::function<std::array<std::array<double, 2>, 2>(const Point2 &)> jac;
  std::function<std::array<std::array<std::array<double, 2>, 2>, 2>(
      const Point2 &)>
      second;
  std::string label;
};

VectorField2 lincomb(const std::vector<std::pair<double, VectorField2>> &terms);

// The affine Killing fields of Mc in the order
//   f1 = e^{c x2} cos(x2) d1, f2 = e^{c x2} sin(x2) d1, f3 = x1 d1, f4 = d2.
std::vector<VectorField2> killing_basis(double c);

// (L_X nabla)_ij^k = di dj X^k + X^m dm G_ij^k - G_ij^m dm X^k
//                    + G_mj^k di X^m + G_im^k dj X^m
// Vanishes at every point iff X is an affine Killing field.
CubicForm2 killing_residual(const ConnectionField &conn, const VectorField2 &X,
                            const Point2 &p);

// [X,Y]^j = X^i di Y^j - Y^i di X^j; second partials by finite differences
// of the analytic jacobian.
VectorField2 bracket(const VectorField2 &X, const VectorField2 &Y);

struct LieAlgebraTable {
  int dim = 0;
  double c[4][4][4] = {}; // [e_i, e_j] = c[i][j][k] e_k

  double antisymmetry_defect() const;
  double jacobi_defect() const;
};

double max_table_diff(const LieAlgebraTable &a, const LieAlgebraTable &b);

// Structure constants by least squares over the sampled basis evaluations.
// Throws degenerate_samples_error if the evaluation matrix loses rank and a
// runtime_error if a bracket fails to close in the span (fit residual above
// fit_tol).
LieAlgebraTable structure_constants(const std::vector<VectorField2> &basis,
                                    const std::vector<Point2> &samples,
                                    double fit_tol = 1e-8);

// [e1,e3]=e1, [e2,e3]=e2, [e1,e4]=-e2, [e2,e4]=e1
LieAlgebraTable a412_table();

// Table in the primed basis e'_a = sum_i S[a][i] f_i.
LieAlgebraTable change_basis(const LieAlgebraTable &table,
                             const std::array<std::array<double, 4>, 4> &S);

} // namespace affine

#endif
