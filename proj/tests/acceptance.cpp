// Acceptance suite: one line per criterion, pinned tolerances, exit 1 on any
// failure.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "affine/figure.hpp"
#include "affine/quotient.hpp"
#include "affine/rng.hpp"
#include "affine/symmetry.hpp"

using namespace affine;

namespace {

int g_failures = 0;

void report(int index, const std::string &name, bool pass,
            const std::string &detail) {
  std::printf("[%s] %02d %-28s %s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  if (!pass)
    ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

AffineMapParams random_params(Rng &rng, bool with_sign) {
  AffineMapParams p;
  p.alpha = rng.uniform(-2, 2);
  p.beta = rng.uniform(-2, 2);
  p.gamma = rng.uniform(-2, 2);
  p.delta = rng.uniform(-2, 2);
  p.sign = (with_sign && rng.next_u64() % 2 == 0) ? -1 : +1;
  return p;
}

const std::vector<double> kCSet{0.0, 0.3, 1.0, 2.5};

// 1. rho = (1+c^2) dx2 (x) dx2, analytic within 1e-10, fd within 1e-6
void criterion_ricci() {
  double worst_an = 0.0, worst_fd = 0.0;
  for (double c : kCSet) {
    const SurfaceFamily s = make_surface(FamilyKind::Mc, c);
    const ConnectionField fd = with_fd_partials(s.conn);
    BilinearForm2 target;
    target.m[1][1] = 1.0 + c * c;
    for (const Point2 &p : sample_points(100, 101)) {
      worst_an = std::max(worst_an, (ricci_at(s.conn, p).rho - target).max_abs());
      worst_fd = std::max(worst_fd, (ricci_at(fd, p).rho - target).max_abs());
    }
  }
  report(1, "ricci-reproduction", worst_an < 1e-10 && worst_fd < 1e-6,
         "analytic " + fmt(worst_an) + " < 1e-10, fd " + fmt(worst_fd) +
             " < 1e-6");
}

// 2. alpha = 16 c^2 / (1+c^2) within 1e-9; separation between c=0.5 and c=1
void criterion_alpha() {
  double worst = 0.0;
  for (double c : kCSet) {
    const SurfaceFamily s = make_surface(FamilyKind::Mc, c);
    const double target = 16.0 * c * c / (1.0 + c * c);
    for (const Point2 &p : sample_points(20, 102))
      worst = std::max(worst,
                       std::fabs(alpha_invariant(s.conn, p) - target));
  }
  const double a_half =
      alpha_invariant(make_surface(FamilyKind::Mc, 0.5).conn, Point2{0.3, -1});
  const double a_one =
      alpha_invariant(make_surface(FamilyKind::Mc, 1.0).conn, Point2{0.3, -1});
  const double a0 =
      alpha_invariant(make_surface(FamilyKind::Mc, 0.0).conn, Point2{1, 1});
  const double sep = std::fabs(a_half - a_one);
  const bool pass = worst < 1e-9 && std::fabs(a_one - 8.0) < 1e-9 &&
                    std::fabs(a0) < 1e-9 && sep > 0.1;
  report(2, "alpha-invariant", pass,
         "max dev " + fmt(worst) + " < 1e-9, Mc:1 -> " + fmt(a_one) +
             ", separation " + fmt(sep) + " > 0.1");
}

// 3. quasi-Einstein bases across the catalog; x2 on Mc(0) as the control
void criterion_quasi_einstein() {
  double worst = 0.0;
  auto scan = [&worst](const SurfaceFamily &s, std::uint64_t seed) {
    for (const ScalarField &f : s.qe_basis)
      for (const Point2 &p : sample_points(100, seed))
        worst = std::max(worst,
                         quasi_einstein_residual(s.conn, f, p).max_abs());
  };
  for (double c : kCSet)
    scan(make_surface(FamilyKind::Mc, c), 103);
  scan(make_surface(FamilyKind::M0c, 0.7), 104);
  scan(make_surface(FamilyKind::Z3), 105);

  const SurfaceFamily m0 = make_surface(FamilyKind::Mc, 0.0);
  double control = 0.0;
  for (const Point2 &p : sample_points(100, 106))
    control = std::max(
        control,
        quasi_einstein_residual(m0.conn, coordinate_field(1), p).max_abs());
  report(3, "quasi-einstein-bases", worst < 1e-10 && control > 1e-2,
         "basis residual " + fmt(worst) + " < 1e-10, control " + fmt(control) +
             " > 1e-2");
}

// 4. integrator vs closed forms: 50 states per c, |t| <= 5, pos 1e-6, vel 1e-5
void criterion_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(107);
  double worst_pos = 0.0, worst_vel = 0.0;
  for (double c : {0.0, 0.5, 1.0, 2.0}) {
    const SurfaceFamily s = make_surface(FamilyKind::Mc, c);
    for (int trial = 0; trial < 50; ++trial) {
      const TangentState st{rng.uniform(-2, 2), rng.uniform(-2, 2),
                            rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const GeodesicCurve g = closed_form_geodesic(c, st);
      for (double sign : {1.0, -1.0}) {
        const double lim = sign > 0 ? g.domain.hi : -g.domain.lo;
        double t_end = std::min(0.9 * lim, 5.0);
        if (!std::isfinite(lim))
          t_end = 5.0;
        if (t_end <= 1e-3)
          continue;
        const Trajectory traj =
            integrate_geodesic(s.conn, st, sign * t_end);
        if (traj.outcome != IntegrationOutcome::ReachedEnd)
          continue;
        const size_t stride = std::max<size_t>(1, traj.samples.size() / 10);
        for (size_t i = 0; i < traj.samples.size(); i += stride) {
          const auto &smp = traj.samples[i];
          const Point2 x = g.position(smp.t);
          const auto v = g.velocity(smp.t);
          worst_pos = std::max({worst_pos, std::fabs(smp.x1 - x.x1),
                                std::fabs(smp.x2 - x.x2)});
          worst_vel = std::max({worst_vel, std::fabs(smp.dx1 - v[0]),
                                std::fabs(smp.dx2 - v[1])});
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report(4, "geodesic-oracle", worst_pos < 1e-6 && worst_vel < 1e-5 &&
                                   secs < 30.0,
         "pos " + fmt(worst_pos) + " < 1e-6, vel " + fmt(worst_vel) +
             " < 1e-5, " + fmt(secs) + " s < 30 s");
}

// 5. incompleteness: Escaped near t = 1/2 and the speed blow-up
void criterion_incompleteness() {
  const SurfaceFamily m1 = make_surface(FamilyKind::Mc, 1.0);
  const TangentState st{0, 0, 1, -1};
  const Trajectory traj = integrate_geodesic(m1.conn, st, 1.0);
  const double sp = speed(1.0, st, 0.5 - 1e-3);
  const bool pass = traj.outcome == IntegrationOutcome::Escaped &&
                    std::fabs(traj.last_t() - 0.5) < 1e-3 && sp > 1e5;
  report(5, "incompleteness", pass,
         "last t " + fmt(traj.last_t()) + " ~ 0.5, speed " + fmt(sp) +
             " > 1e5");
}

// 6. group laws, action homomorphism, connection preservation
void criterion_group() {
  Rng rng(108);
  const double c = 1.0;
  double assoc = 0.0, ident = 0.0, inver = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AffineMapParams p = random_params(rng, true);
    const AffineMapParams q = random_params(rng, true);
    const AffineMapParams r = random_params(rng, true);
    assoc = std::max(assoc,
                     params_distance(compose_T(compose_T(p, q, c), r, c),
                                     compose_T(p, compose_T(q, r, c), c)));
    ident = std::max(ident,
                     params_distance(compose_T(p, identity_params(), c), p));
    inver = std::max(inver, params_distance(compose_T(p, invert_T(p, c), c),
                                            identity_params()));
  }
  double hom = 0.0;
  for (int i = 0; i < 100; ++i) {
    const AffineMapParams p = random_params(rng, true);
    const AffineMapParams q = random_params(rng, true);
    const AffineMapParams pq = compose_T(p, q, c);
    for (const Point2 &x : sample_points(10, 109))
      hom = std::max(hom, distance(apply_T(pq, c, x),
                                   apply_T(p, c, apply_T(q, c, x))));
  }
  double pull = 0.0;
  for (double cc : {0.0, 0.5, 1.0}) {
    const SurfaceFamily s = make_surface(FamilyKind::Mc, cc);
    for (int i = 0; i < 34; ++i) {
      const AffineMapParams p = random_params(rng, false);
      const ConnectionField back =
          pullback_connection(s.conn, chart_of(p, cc));
      for (int k = 0; k < 3; ++k) {
        const Point2 x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const ChristoffelValue ga = back.eval(x);
        const ChristoffelValue gb = s.conn.eval(x);
        for (int ii = 0; ii < 2; ++ii)
          for (int jj = 0; jj < 2; ++jj)
            for (int kk = 0; kk < 2; ++kk)
              pull = std::max(pull,
                              std::fabs(ga.g[ii][jj][kk] - gb.g[ii][jj][kk]));
      }
    }
  }
  const bool pass = assoc < 1e-12 && ident < 1e-12 && inver < 1e-12 &&
                    hom < 1e-10 && pull < 1e-9;
  report(6, "group-laws", pass,
         "assoc " + fmt(assoc) + ", inverse " + fmt(inver) + ", action " +
             fmt(hom) + " < 1e-10, pullback " + fmt(pull) + " < 1e-9");
}

// 7. Killing certification and the A4,12 identification
void criterion_killing() {
  double grid = 0.0, jacobi = 0.0, a412 = 0.0;
  for (double c : {0.0, 1.0, 2.0}) {
    const SurfaceFamily s = make_surface(FamilyKind::Mc, c);
    const auto basis = killing_basis(c);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const Point2 p{-3.0 + 6.0 * i / 19.0, -3.0 + 6.0 * j / 19.0};
        for (const VectorField2 &X : basis)
          grid = std::max(grid, killing_residual(s.conn, X, p).max_abs());
      }
    const LieAlgebraTable t =
        structure_constants(basis, sample_points(12, 110));
    jacobi = std::max(jacobi, t.jacobi_defect());
    const std::array<std::array<double, 4>, 4> S{{{1, 0, 0, 0},
                                                  {0, -1, 0, 0},
                                                  {0, 0, 1, 0},
                                                  {0, 0, c, 1}}};
    a412 = std::max(a412, max_table_diff(change_basis(t, S), a412_table()));
  }
  const bool pass = grid < 1e-8 && jacobi < 1e-10 && a412 < 1e-10;
  report(7, "killing-certification", pass,
         "grid " + fmt(grid) + " < 1e-8, jacobi " + fmt(jacobi) +
             ", A4,12 " + fmt(a412) + " < 1e-10");
}

// 8. the almost-Zoll certificate
void criterion_almost_zoll() {
  const SurfaceFamily m0 = make_surface(FamilyKind::Mc, 0.0);
  bool pass = true;
  std::string detail;
  double worst_period = 0.0;
  for (const char *name : {"cylinder", "moebius"}) {
    const QuotientSurface q = make_quotient(name, m0);
    const double expected_factor = q.shift; // 2pi or pi over |b|
    for (const Point2 &base :
         {Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{-2.0, 2.0}}) {
      const SweepSummary sw = almost_zoll_sweep(q, base, 32, ClassifyOptions{});
      if (!(sw.almost_zoll && sw.closed == 30 && sw.alienated == 2))
        pass = false;
      for (const SweepEntry &e : sw.entries)
        if (e.report.outcome == Closure::Closed && e.report.period)
          worst_period =
              std::max(worst_period, std::fabs(*e.report.period -
                                               expected_factor /
                                                   std::fabs(e.b)));
    }
  }
  if (worst_period >= 1e-7)
    pass = false;
  detail += "Mc:0 period err " + fmt(worst_period) + " < 1e-7";

  const SurfaceFamily m1 = make_surface(FamilyKind::Mc, 1.0);
  const QuotientSurface cyl1 = make_quotient("cylinder", m1);
  const SweepSummary sw1 =
      almost_zoll_sweep(cyl1, Point2{0.0, 0.0}, 16, ClassifyOptions{});
  double worst_pos = 0.0, min_vel = std::numeric_limits<double>::infinity();
  int rtb = 0, alien = 0;
  for (const SweepEntry &e : sw1.entries) {
    if (e.b == 0.0) {
      if (e.report.outcome == Closure::Alienated)
        ++alien;
    } else if (e.report.outcome == Closure::ReturnsToBase) {
      ++rtb;
      worst_pos = std::max(worst_pos, e.report.position_error);
      min_vel = std::min(min_vel, e.report.velocity_error);
    }
  }
  if (!(rtb == 14 && alien == 2 && worst_pos < 1e-6 && min_vel > 0.1))
    pass = false;
  detail += "; Mc:1 rtb=" + std::to_string(rtb) + " pos " + fmt(worst_pos) +
            " < 1e-6, vel " + fmt(min_vel) + " > 0.1";
  report(8, "almost-zoll-certificate", pass, detail);
}

// 9. shear pullback == projective modification; QE spans match
void criterion_projective_triangle() {
  double coeff = 0.0;
  bool spans = true;
  for (double c : {0.5, 1.0, 2.0}) {
    const SurfaceFamily mc = make_surface(FamilyKind::Mc, c);
    const SurfaceFamily m0 = make_surface(FamilyKind::Mc, 0.0);
    const ConnectionField pulled = pullback_connection(mc.conn, shear_chart(c));
    const ConnectionField modified =
        projective_modify(m0.conn, scale_field(c, coordinate_field(1)));
    for (const Point2 &p : sample_points(200, 111)) {
      const ChristoffelValue ga = pulled.eval(p);
      const ChristoffelValue gb = modified.eval(p);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            coeff = std::max(coeff, std::fabs(ga.g[i][j][k] - gb.g[i][j][k]));
    }
    std::vector<ScalarField> lhs;
    for (const ScalarField &f : mc.qe_basis)
      lhs.push_back(pullback_field(f, shear_chart(c)));
    const ScalarField ecx2 = exp_of(scale_field(c, coordinate_field(1)));
    std::vector<ScalarField> rhs;
    for (const ScalarField &f : m0.qe_basis)
      rhs.push_back(multiply_fields(ecx2, f));
    if (!qe_span_equal(lhs, rhs, sample_points(40, 112)))
      spans = false;
  }
  report(9, "projective-triangle", coeff < 1e-10 && spans,
         "coefficient diff " + fmt(coeff) + " < 1e-10, spans equal: " +
             (spans ? "yes" : "no"));
}

// 10. the Z3 surface
void criterion_z3() {
  const auto T = z3_rotation();
  long P[2][2] = {{1, 0}, {0, 1}};
  for (int n = 0; n < 3; ++n) {
    long Q[2][2] = {};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          Q[i][j] += T[i][k] * P[k][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        P[i][j] = Q[i][j];
  }
  const bool t3 = P[0][0] == 1 && P[0][1] == 0 && P[1][0] == 0 && P[1][1] == 1;

  const SurfaceFamily z3 = make_surface(FamilyKind::Z3);
  std::vector<ScalarField> pulled;
  for (const ScalarField &f : z3.qe_basis)
    pulled.push_back(pullback_field(f, z3_symmetry_chart()));
  const bool span = qe_span_equal(pulled, z3.qe_basis,
                                  sample_points(40, 113, -1.5, 1.5));

  BilinearForm2 target;
  target.m[0][0] = target.m[1][1] = -2.0 / 3.0;
  target.m[0][1] = target.m[1][0] = -1.0 / 3.0;
  double rho_dev = 0.0;
  for (const Point2 &p : sample_points(50, 114))
    rho_dev =
        std::max(rho_dev, (ricci_at(z3.conn, p).rho - target).max_abs());

  report(10, "z3-surface", t3 && span && rho_dev < 1e-10,
         std::string("T^3=id: ") + (t3 ? "yes" : "no") + ", span preserved: " +
             (span ? "yes" : "no") + ", rho dev " + fmt(rho_dev) + " < 1e-10");
}

// 11. deck equivariance
void criterion_equivariance() {
  Rng rng(115);
  std::vector<Point2> samples = sample_points(20, 116);
  samples.push_back(Point2{0.0, 0.0});

  const QuotientSurface cyl0 =
      make_quotient("cylinder", make_surface(FamilyKind::Mc, 0.0));
  double central = 0.0;
  for (int i = 0; i < 100; ++i)
    central = std::max(central, equivariance_check(
                                    cyl0, random_params(rng, false), 0.0,
                                    samples));

  const QuotientSurface cyl1 =
      make_quotient("cylinder", make_surface(FamilyKind::Mc, 1.0));
  const AffineMapParams witness{0, 1, 0, 0, +1};
  const double defect = equivariance_check(cyl1, witness, 1.0, samples);
  const double needed = (std::exp(2.0 * M_PI) - 1.0) * (1.0 - 1e-12);

  double tcheck_worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    AffineMapParams tc;
    tc.alpha = rng.uniform(-2, 2);
    tc.delta = rng.uniform(-2, 2);
    tcheck_worst =
        std::max(tcheck_worst, equivariance_check(cyl1, tc, 1.0, samples));
  }
  const bool pass =
      central < 1e-12 && defect >= needed && tcheck_worst < 1e-12;
  report(11, "deck-equivariance", pass,
         "central " + fmt(central) + " < 1e-12, witness defect " +
             fmt(defect) + " >= e^{2pi}-1, T-check " + fmt(tcheck_worst) +
             " < 1e-12");
}

// 12. figure reproduction
void criterion_figure() {
  const std::vector<Point2> bases{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  const auto panels = figure_panels(bases);
  bool pass = panels.size() == 3;
  double worst = 0.0;
  for (const FigurePanel &panel : panels)
    for (const FigureCurve &curve : panel.curves)
      if (curve.b > 0.0) {
        const Point2 want{-panel.base.x1, panel.base.x2 + M_PI};
        worst = std::max(worst, distance(curve.at_focus_param, want));
      }
  if (worst >= 1e-6)
    pass = false;
  const std::string svg = figure_svg(panels);
  if (svg.find("<svg") != 0 || svg.find("stroke-dasharray") ==
                                   std::string::npos)
    pass = false;
  report(12, "figure-reproduction", pass,
         "3 panels, b>0 curves at (-u, pi) within " + fmt(worst) +
             " (< 1e-6)");
}

} // namespace

int main() {
  criterion_ricci();
  criterion_alpha();
  criterion_quasi_einstein();
  criterion_oracle_equivalence();
  criterion_incompleteness();
  criterion_group();
  criterion_killing();
  criterion_almost_zoll();
  criterion_projective_triangle();
  criterion_z3();
  criterion_equivariance();
  criterion_figure();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 12 acceptance criteria passed\n");
  return 0;
}
