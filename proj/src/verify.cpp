#include "affine/verify.hpp"

#include <nlohmann/json.hpp>

#include "affine/io.hpp"
#include "affine/quotient.hpp"
#include "affine/rng.hpp"
#include "affine/symmetry.hpp"

namespace affine {

namespace {

CheckResult upper(std::string id, std::string desc, double residual,
                  double tol) {
  return CheckResult{std::move(id), std::move(desc), residual, tol,
                     residual <= tol};
}

CheckResult lower(std::string id, std::string desc, double residual,
                  double tol) {
  return CheckResult{std::move(id), std::move(desc), residual, tol,
                     residual > tol};
}

AffineMapParams random_params(Rng &rng, bool with_sign) {
  AffineMapParams p;
  p.alpha = rng.uniform(-2.0, 2.0);
  p.beta = rng.uniform(-2.0, 2.0);
  p.gamma = rng.uniform(-2.0, 2.0);
  p.delta = rng.uniform(-2.0, 2.0);
  p.sign = (with_sign && rng.next_u64() % 2 == 0) ? -1 : +1;
  return p;
}

double christoffel_diff(const ConnectionField &a, const ConnectionField &b,
                        const Point2 &p) {
  const ChristoffelValue ga = a.eval(p);
  const ChristoffelValue gb = b.eval(p);
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        d = std::max(d, std::fabs(ga.g[i][j][k] - gb.g[i][j][k]));
  return d;
}

} // namespace

std::vector<CheckResult> verify_core(const SurfaceFamily &s,
                                     std::uint64_t seed) {
  std::vector<CheckResult> out;
  const ConnectionField &conn = s.conn;
  const auto points = sample_points(100, seed);
  const auto wide_points = sample_points(100, seed + 1, -3.0, 3.0);

  { // torsion symmetry, exact
    double d = 0.0;
    for (const Point2 &p : sample_points(10000, seed + 2, -3.0, 3.0))
      d = std::max(d, conn.eval(p).torsion_defect());
    out.push_back(upper("core.torsion",
                        "Gamma_ij^k == Gamma_ji^k exactly at 10^4 points", d,
                        0.0));
  }

  if (conn.partials) { // analytic partials vs central differences
    const double h = conn.fd_step;
    const ConnectionField fd = with_fd_partials(conn);
    double worst = 0.0;
    for (const Point2 &p : wide_points) {
      const ChristoffelPartials da = conn.partials(p);
      const ChristoffelPartials db = christoffel_partials_at(fd, p);
      for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
              const double scale = std::max(1.0, std::fabs(da.d[m][i][j][k]));
              worst = std::max(
                  worst, std::fabs(da.d[m][i][j][k] - db.d[m][i][j][k]) / scale);
            }
    }
    out.push_back(upper("core.fd_partials",
                        "analytic dGamma matches central differences",
                        worst, 10.0 * h * h));
  }

  { // Ricci against the family's known value
    BilinearForm2 target;
    if (s.kind == FamilyKind::Mc || s.kind == FamilyKind::M0c)
      target.m[1][1] = 1.0 + s.c * s.c;
    else if (s.kind == FamilyKind::Z3) {
      target.m[0][0] = target.m[1][1] = -2.0 / 3.0;
      target.m[0][1] = target.m[1][0] = -1.0 / 3.0;
    } // flat: zero
    double worst_an = 0.0, worst_fd = 0.0;
    const ConnectionField fd = with_fd_partials(conn);
    for (const Point2 &p : points) {
      worst_an = std::max(worst_an, (ricci_at(conn, p).rho - target).max_abs());
      worst_fd = std::max(worst_fd, (ricci_at(fd, p).rho - target).max_abs());
    }
    out.push_back(upper("core.ricci_value",
                        "rho matches the family value (analytic partials)",
                        worst_an, 1e-10));
    out.push_back(upper("core.ricci_fd",
                        "rho matches the family value (fd partials)", worst_fd,
                        1e-6));
  }

  { // Hessian symmetry, exact
    const ScalarField f = quadratic_field({0.3, -1.1, 0.8, 0.5, -0.2, 0.7});
    double d = 0.0;
    for (const Point2 &p : points) {
      const BilinearForm2 H = hessian(conn, f, p);
      d = std::max(d, std::fabs(H.m[0][1] - H.m[1][0]));
    }
    out.push_back(
        upper("core.hessian_symmetry", "Hf equals its transpose exactly", d,
              0.0));
  }

  { // quasi-Einstein basis residuals
    double worst = 0.0;
    for (const ScalarField &f : s.qe_basis)
      for (const Point2 &p : points)
        worst =
            std::max(worst, quasi_einstein_residual(conn, f, p).max_abs());
    out.push_back(upper("core.qe_basis",
                        "QE residual of the solution basis vanishes", worst,
                        1e-10));

    const ScalarField control = s.kind == FamilyKind::Flat
                                    ? exp_of(coordinate_field(0))
                                    : coordinate_field(1);
    double control_max = 0.0;
    for (const Point2 &p : points)
      control_max = std::max(
          control_max, quasi_einstein_residual(conn, control, p).max_abs());
    out.push_back(lower("core.qe_negative_control",
                        "residual of the non-solution control must exceed "
                        "the threshold somewhere",
                        control_max, 1e-2));
  }

  if (s.kind == FamilyKind::Mc || s.kind == FamilyKind::M0c) {
    const double target = 16.0 * s.c * s.c / (1.0 + s.c * s.c);
    double worst_val = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Point2 &p : sample_points(20, seed + 3)) {
      const double a = alpha_invariant(conn, p);
      worst_val = std::max(worst_val, std::fabs(a - target));
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    out.push_back(upper("core.alpha_constancy",
                        "alpha is independent of the base point", hi - lo,
                        1e-9));
    out.push_back(upper("core.alpha_value",
                        "alpha=" + fmt_g(target, 12) + " (16c^2/(1+c^2))",
                        worst_val, 1e-9));

    const double nr_target = -4.0 * s.c * (1.0 + s.c * s.c);
    double worst_nr = 0.0, max_nr = 0.0;
    for (const Point2 &p : wide_points) {
      const CubicForm2 nr = nabla_ricci_at(conn, p);
      worst_nr = std::max(worst_nr, std::fabs(nr.t[1][1][1] - nr_target));
      max_nr = std::max(max_nr, nr.max_abs());
    }
    out.push_back(upper("core.nabla_rho_value",
                        "(nabla rho)(d2,d2;d2) = -4c(1+c^2)", worst_nr, 1e-9));
    if (s.c == 0.0)
      out.push_back(upper("core.affine_symmetric",
                          "nabla rho vanishes (affine symmetric, c = 0)",
                          max_nr, 1e-10));
    else if (s.c >= 0.1)
      out.push_back(lower("core.not_affine_symmetric",
                          "max |nabla rho| must exceed the threshold (c > 0)",
                          max_nr, 0.1));
  }

  if (s.kind == FamilyKind::Flat) {
    double max_nr = 0.0;
    for (const Point2 &p : points)
      max_nr = std::max(max_nr, nabla_ricci_at(conn, p).max_abs());
    out.push_back(upper("core.affine_symmetric",
                        "nabla rho vanishes for the flat connection", max_nr,
                        1e-12));
  }

  return out;
}

std::vector<CheckResult> verify_symmetry(const SurfaceFamily &s,
                                         std::uint64_t seed) {
  if (s.kind != FamilyKind::Mc)
    throw std::invalid_argument(
        "the symmetry suite runs on the Mc family (surface id Mc:<c>)");
  const double c = s.c;
  std::vector<CheckResult> out;
  Rng rng(seed);
  const auto points = sample_points(50, seed + 10);

  { // group axioms
    double assoc = 0.0, ident = 0.0, inver = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const AffineMapParams p = random_params(rng, true);
      const AffineMapParams q = random_params(rng, true);
      const AffineMapParams r = random_params(rng, true);
      assoc = std::max(assoc,
                       params_distance(compose_T(compose_T(p, q, c), r, c),
                                       compose_T(p, compose_T(q, r, c), c)));
      ident = std::max(
          ident, params_distance(compose_T(p, identity_params(), c), p));
      ident = std::max(
          ident, params_distance(compose_T(identity_params(), p, c), p));
      inver = std::max(
          inver, params_distance(compose_T(p, invert_T(p, c), c),
                                 identity_params()));
      inver = std::max(
          inver, params_distance(compose_T(invert_T(p, c), p, c),
                                 identity_params()));
    }
    out.push_back(upper("sym.associativity",
                        "compose_T associative over 1000 random triples",
                        assoc, 1e-12));
    out.push_back(upper("sym.identity", "identity laws", ident, 1e-12));
    out.push_back(upper("sym.inverse", "inverse laws", inver, 1e-12));
  }

  { // apply respects composition
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const AffineMapParams p = random_params(rng, true);
      const AffineMapParams q = random_params(rng, true);
      const AffineMapParams pq = compose_T(p, q, c);
      for (const Point2 &x : points)
        worst = std::max(worst, distance(apply_T(pq, c, x),
                                         apply_T(p, c, apply_T(q, c, x))));
    }
    out.push_back(upper("sym.action_homomorphism",
                        "apply(compose(p,q)) == apply(p) o apply(q)", worst,
                        1e-10));
  }

  { // group elements preserve the QE span and the connection
    double span_worst = 0.0, conn_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const AffineMapParams p = random_params(rng, false);
      const ChartMap chart = chart_of(p, c);
      std::vector<ScalarField> pulled;
      for (const ScalarField &f : s.qe_basis)
        pulled.push_back(pullback_field(f, chart));
      span_worst =
          std::max(span_worst, span_residual(pulled, s.qe_basis, points));
      const ConnectionField back = pullback_connection(s.conn, chart);
      for (int k = 0; k < 5; ++k) {
        const Point2 x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        conn_worst = std::max(conn_worst, christoffel_diff(back, s.conn, x));
      }
    }
    out.push_back(upper("sym.qe_preservation",
                        "pullback of the QE basis stays in its span",
                        span_worst, 1e-8));
    out.push_back(upper("sym.connection_preservation",
                        "pullback of the connection under group elements",
                        conn_worst, 1e-9));
  }

  { // transitivity
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Point2 from{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const Point2 to{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const AffineMapParams w = transitivity_witness(c, from, to);
      worst = std::max(worst, distance(apply_T(w, c, from), to));
    }
    out.push_back(upper("sym.transitivity",
                        "witness element maps p to q for random pairs", worst,
                        1e-10));
  }

  { // Killing residuals on a grid
    const auto basis = killing_basis(c);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const Point2 p{-3.0 + 6.0 * i / 19.0, -3.0 + 6.0 * j / 19.0};
        for (const VectorField2 &X : basis)
          worst = std::max(worst, killing_residual(s.conn, X, p).max_abs());
      }
    out.push_back(upper("sym.killing_grid",
                        "L_X nabla vanishes for the Killing basis on a 20x20 "
                        "grid in [-3,3]^2",
                        worst, 1e-8));

    VectorField2 bad; // x2 d2 is not in the 4-dimensional algebra
    bad.value = [](const Point2 &p) { return std::array<double, 2>{0.0, p.x2}; };
    bad.jac = [](const Point2 &) {
      std::array<std::array<double, 2>, 2> j{};
      j[1][1] = 1.0;
      return j;
    };
    bad.second = [](const Point2 &) {
      return std::array<std::array<std::array<double, 2>, 2>, 2>{};
    };
    bad.label = "x2 d2";
    double bad_max = 0.0;
    for (const Point2 &p : points)
      bad_max = std::max(bad_max, killing_residual(s.conn, bad, p).max_abs());
    out.push_back(lower("sym.nonkilling_control",
                        "residual of x2 d2 must exceed the threshold",
                        bad_max, 1e-2));
  }

  { // structure constants, Jacobi, A4,12 identification
    const auto basis = killing_basis(c);
    const LieAlgebraTable table =
        structure_constants(basis, sample_points(12, seed + 20));
    out.push_back(upper("sym.antisymmetry", "bracket table antisymmetry",
                        table.antisymmetry_defect(), 1e-12));
    out.push_back(upper("sym.jacobi", "Jacobi identity for the bracket table",
                        table.jacobi_defect(), 1e-10));
    // basis change (f1, -f2, f3, f4 + c f3)
    const std::array<std::array<double, 4>, 4> S{{{1, 0, 0, 0},
                                                  {0, -1, 0, 0},
                                                  {0, 0, 1, 0},
                                                  {0, 0, c, 1}}};
    const double diff = max_table_diff(change_basis(table, S), a412_table());
    out.push_back(upper("sym.a412",
                        "structure constants transform to the A4,12 table "
                        "under (f1, -f2, f3, f4 + c f3)",
                        diff, 1e-10));
  }

  return out;
}

std::vector<CheckResult> verify_quotient(const SurfaceFamily &s,
                                         std::uint64_t seed) {
  if (s.kind != FamilyKind::Mc)
    throw std::invalid_argument(
        "the quotient suite runs on the Mc family (surface id Mc:<c>)");
  const double c = s.c;
  std::vector<CheckResult> out;
  Rng rng(seed);
  const QuotientSurface cyl = make_quotient("cylinder", s);
  const QuotientSurface moe = make_quotient("moebius", s);
  const auto points = sample_points(200, seed + 30);

  { // deck maps are affine
    double worst_cyl = 0.0, worst_moe = 0.0;
    const ConnectionField cyl_pulled =
        pullback_connection(s.conn, chart_of(cyl.deck, c));
    const ConnectionField moe_pulled =
        pullback_connection(s.conn, chart_of(moe.deck, c));
    for (const Point2 &p : points) {
      worst_cyl = std::max(worst_cyl, christoffel_diff(cyl_pulled, s.conn, p));
      worst_moe = std::max(worst_moe, christoffel_diff(moe_pulled, s.conn, p));
    }
    out.push_back(upper("quot.deck_affine_cylinder",
                        "Phi preserves the connection", worst_cyl, 1e-10));
    out.push_back(upper("quot.deck_affine_moebius",
                        "Psi preserves the connection", worst_moe, 1e-10));
  }

  { // Psi o Psi = Phi exactly
    const double d =
        params_distance(compose_T(moe.deck, moe.deck, c), cyl.deck);
    out.push_back(
        upper("quot.double_cover", "Psi o Psi == Phi exactly", d, 0.0));
  }

  if (c == 0.0) { // classification invariants at c = 0
    const TangentState st{0.3, 0.2, 1.0, 1.0};
    const ClosureReport r1 = classify_geodesic(cyl, st);
    const Point2 moved = deck_point(cyl, 1, Point2{st.u, st.v});
    const auto mv = deck_vector(cyl, 1, {st.a, st.b});
    const ClosureReport r2 = classify_geodesic(
        cyl, TangentState{moved.x1, moved.x2, mv[0], mv[1]});
    const bool same = r1.outcome == r2.outcome && r1.period && r2.period;
    const double dp = same ? std::fabs(*r1.period - *r2.period) : 1.0;
    out.push_back(upper("quot.deck_invariant",
                        "classification agrees from base and deck(base)", dp,
                        1e-9));

    double period_err = 0.0;
    for (double b : {1.0, -0.5, 2.0}) {
      const ClosureReport r =
          classify_geodesic(cyl, TangentState{0.5, 0.0, 0.7, b});
      if (r.outcome == Closure::Closed && r.period)
        period_err = std::max(
            period_err, std::fabs(*r.period - 2.0 * M_PI / std::fabs(b)));
      else
        period_err = 1.0;
      const ClosureReport rm =
          classify_geodesic(moe, TangentState{0.5, 0.0, 0.7, b});
      if (rm.outcome == Closure::Closed && rm.period)
        period_err = std::max(period_err,
                              std::fabs(*rm.period - M_PI / std::fabs(b)));
      else
        period_err = 1.0;
    }
    out.push_back(upper("quot.closure_period",
                        "closed periods are 2pi/|b| (cylinder), pi/|b| "
                        "(Moebius)",
                        period_err, 1e-7));
  }

  { // alienated iff null rho-speed
    const ClosureReport rh =
        classify_geodesic(cyl, TangentState{0.4, 0.0, 1.0, 0.0});
    double max_speed = 0.0;
    for (int i = 0; i <= 10; ++i)
      max_speed = std::max(max_speed,
                           speed(c, TangentState{0.4, 0.0, 1.0, 0.0}, 0.3 * i));
    const double resid =
        (rh.outcome == Closure::Alienated ? 0.0 : 1.0) + max_speed;
    out.push_back(upper("quot.alienated_null_speed",
                        "horizontal direction is Alienated with zero "
                        "rho-speed",
                        resid, 1e-12));
  }

  { // equivariance: Phi vs the group
    std::vector<Point2> samples = sample_points(20, seed + 31);
    samples.push_back(Point2{0.0, 0.0});
    if (c == 0.0) {
      double worst = 0.0;
      for (int i = 0; i < 100; ++i)
        worst = std::max(
            worst, equivariance_check(cyl, random_params(rng, false), c,
                                      samples));
      out.push_back(upper("quot.phi_central",
                          "Phi commutes with 100 random elements (c = 0)",
                          worst, 1e-12));
    } else {
      const AffineMapParams witness{0.0, 1.0, 0.0, 0.0, +1};
      const double defect = equivariance_check(cyl, witness, c, samples);
      out.push_back(lower("quot.phi_not_central",
                          "witness " + format_T(witness) +
                              " fails to commute with Phi by at least "
                              "e^{2 pi c} - 1",
                          defect,
                          (std::exp(2.0 * M_PI * c) - 1.0) * (1.0 - 1e-12)));
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        AffineMapParams tcheck; // beta = gamma = 0 scaling/shift subgroup
        tcheck.alpha = rng.uniform(-2.0, 2.0);
        tcheck.delta = rng.uniform(-2.0, 2.0);
        worst = std::max(worst, equivariance_check(cyl, tcheck, c, samples));
      }
      out.push_back(upper("quot.tcheck_commutes",
                          "T-check(alpha,delta) commutes with Phi for c != 0",
                          worst, 1e-12));
    }
  }

  { // sweep pattern
    const SweepSummary sw =
        almost_zoll_sweep(cyl, Point2{0.0, 0.0}, 16, ClassifyOptions{});
    double resid;
    if (c == 0.0) {
      resid = sw.almost_zoll ? 0.0 : 1.0;
    } else {
      resid = (sw.alienated == 2 && sw.returns_to_base == 14) ? 0.0 : 1.0;
    }
    out.push_back(upper("quot.sweep_pattern",
                        c == 0.0
                            ? "16-direction sweep is almost Zoll (c = 0)"
                            : "16-direction sweep: 14 ReturnsToBase + 2 "
                              "Alienated (c > 0)",
                        resid, 0.0));
  }

  return out;
}

std::vector<CheckResult> verify_all(const SurfaceFamily &s,
                                    std::uint64_t seed) {
  std::vector<CheckResult> out = verify_core(s, seed);
  if (s.kind == FamilyKind::Mc) {
    auto sym = verify_symmetry(s, seed);
    out.insert(out.end(), sym.begin(), sym.end());
    auto quo = verify_quotient(s, seed);
    out.insert(out.end(), quo.begin(), quo.end());
  }
  return out;
}

bool all_pass(const std::vector<CheckResult> &checks) {
  for (const CheckResult &c : checks)
    if (!c.pass)
      return false;
  return true;
}

std::string report_json(const std::vector<CheckResult> &checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult &c : checks)
    arr.push_back({{"id", c.id},
                   {"description", c.description},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  return arr.dump(2) + "\n";
}

} // namespace affine
