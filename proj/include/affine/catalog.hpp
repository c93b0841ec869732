#ifndef AFFINE_CATALOG_HPP
#define AFFINE_CATALOG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affine/geometry.hpp"

namespace affine {

enum class FamilyKind { Mc, M0c, Z3, Flat, Custom };

// A named geometry: its connection plus, when known in closed form, a basis
// of the quasi-Einstein solution space.
struct SurfaceFamily {
  FamilyKind kind = FamilyKind::Custom;
  double c = 0.0;
  ConnectionField conn;
  std::vector<ScalarField> qe_basis;
  std::string id;
};

// Mc:   Gamma_22^1 = (1+c^2) x1, Gamma_22^2 = 2c on R^2.
// M0c:  constant symbols Gamma_11^1 = 1, Gamma_22^1 = 1+c^2, Gamma_22^2 = 2c.
// Z3:   the constant-symbol surface with a Z_3 symmetry.
// Flat: all symbols zero.
// Negative c is rejected; replacing x2 by -x2 swaps the sign of c.
SurfaceFamily make_surface(FamilyKind kind, double c = 0.0);

// "Mc:1.0", "M0c:0.5", "Z3", "flat"
SurfaceFamily surface_from_id(std::string_view id);

// A smooth map between charts together with its first and second partials.
// jacobian[m][i] = d Phi^m / d x^i, second[m][i][j] = d_i d_j Phi^m.
struct ChartMap {
  std::function<Point2(const Point2 &)> forward;
  std::function<std::array<std::array<double, 2>, 2>(const Point2 &)> jacobian;
  std::function<std::array<std::array<std::array<double, 2>, 2>, 2>(
      const Point2 &)>
      second;
  std::function<Point2(const Point2 &)> inverse; // optional
  std::function<bool(const Point2 &)> domain;    // optional, for forward
  std::string label;
};

// Composite Psi then Phi (x -> Phi(Psi(x))).
ChartMap compose_charts(const ChartMap &phi, const ChartMap &psi);

ChartMap identity_chart();
// Phi(u1,u2) = (e^{u1}, u2); embeds the constant-symbol chart into Mc.
ChartMap exp_chart();
// Inverse view (log x1, x2), defined on x1 > 0.
ChartMap log_chart();
// phi(x1,x2) = (e^{c x2} x1, x2).
ChartMap shear_chart(double c);
// Linear chart x -> A x.
ChartMap linear_chart(const std::array<std::array<double, 2>, 2> &a,
                      std::string label);

// Gamma~_ij^k(x) = (J^-1)^k_l (d_i d_j Phi^l + Gamma_mn^l(Phi x) J^m_i J^n_j).
// Geodesics of the result are preimages of geodesics of `conn`.
ConnectionField pullback_connection(const ConnectionField &conn,
                                    const ChartMap &map);

// f o Phi with chain-rule partials.
ScalarField pullback_field(const ScalarField &f, const ChartMap &map);

// Gamma~_ij^k = Gamma_ij^k + delta_i^k dj f + delta_j^k di f.
// Unparametrized geodesics are unchanged.
ConnectionField projective_modify(const ConnectionField &conn,
                                  const ScalarField &f);

// Numerical span equality at sample points: rank tests on the evaluation
// matrices with singular values below rel_tol * sigma_max treated as zero.
// Throws degenerate_samples_error when a basis loses rank at the samples.
bool qe_span_equal(const std::vector<ScalarField> &basis_a,
                   const std::vector<ScalarField> &basis_b,
                   const std::vector<Point2> &samples, double rel_tol = 1e-8);

// max over funcs of the relative least-squares residual of its sampled values
// against the span of the sampled basis; 0 means contained.
double span_residual(const std::vector<ScalarField> &funcs,
                     const std::vector<ScalarField> &basis,
                     const std::vector<Point2> &samples);

// The order-3 integer rotation [[0,-1],[1,-1]] cycling
// (1,0) -> (0,1) -> (-1,-1). It acts on the exponent vectors of the Z3
// quasi-Einstein basis; on points the induced symmetry is x -> T^t x, see
// z3_symmetry_chart().
std::array<std::array<int, 2>, 2> z3_rotation();
ChartMap z3_symmetry_chart();

// Reproducible sample points for span/rank tests, uniform in [lo,hi]^2.
std::vector<Point2> sample_points(int n, std::uint64_t seed, double lo = -2.0,
                                  double hi = 2.0);

} // namespace affine

#endif
