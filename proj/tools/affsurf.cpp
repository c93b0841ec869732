// affsurf: evaluate tensors of the catalog surfaces, run geodesics and
// almost-Zoll sweeps on their quotients, verify the library invariants, and
// emit the geodesic-structure figure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "affine/figure.hpp"
#include "affine/io.hpp"
#include "affine/quotient.hpp"
#include "affine/verify.hpp"

namespace {

// stable exit codes
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitDomainError = 2;
constexpr int kExitEscaped = 3;
constexpr int kExitPatternViolated = 4;
constexpr int kExitUnwritable = 5;

struct RunConfig {
  std::string surface = "Mc:0";
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  std::string integrator = "rk45"; // rk45 | rk4
  double fixed_dt = 1e-3;
  std::uint64_t seed = 12345;
  std::string out; // empty = stdout
};

affine::Point2 parse_point(const std::string &text) {
  affine::Point2 p;
  if (std::sscanf(text.c_str(), "%lf,%lf", &p.x1, &p.x2) != 2)
    throw CLI::ValidationError("expected 'x,y', got '" + text + "'");
  return p;
}

affine::IntegratorOptions integrator_options(const RunConfig &cfg) {
  affine::IntegratorOptions opts;
  opts.abs_tol = cfg.tol_abs;
  opts.rel_tol = cfg.tol_rel;
  opts.fixed_step = cfg.integrator == "rk4";
  opts.fixed_dt = cfg.fixed_dt;
  return opts;
}

int write_output(const RunConfig &cfg, const std::string &content) {
  if (cfg.out.empty()) {
    std::fputs(content.c_str(), stdout);
    return kExitOk;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "cannot open '%s' for writing\n", cfg.out.c_str());
    return kExitUnwritable;
  }
  f << content;
  return f.good() ? kExitOk : kExitUnwritable;
}

int run_tensor(const RunConfig &cfg, const std::string &what,
               const std::string &at) {
  const affine::SurfaceFamily s = affine::surface_from_id(cfg.surface);
  const affine::Point2 p = parse_point(at);
  std::string line;
  if (what == "christoffel")
    line = affine::format_christoffels(affine::christoffel_at(s.conn, p));
  else if (what == "ricci")
    line = affine::format_matrix(affine::ricci_at(s.conn, p).rho);
  else if (what == "nabla-ricci")
    line = affine::format_cubic(affine::nabla_ricci_at(s.conn, p));
  else if (what == "alpha")
    line = affine::fmt_g(affine::alpha_invariant(s.conn, p), 12);
  else
    throw CLI::ValidationError(
        "tensor expects christoffel|ricci|nabla-ricci|alpha");
  return write_output(cfg, line + "\n");
}

int run_geodesic(const RunConfig &cfg, const std::string &from,
                 const std::string &dir, double t_end,
                 const std::string &mode) {
  const affine::SurfaceFamily s = affine::surface_from_id(cfg.surface);
  const affine::Point2 p0 = parse_point(from);
  const affine::Point2 d0 = parse_point(dir);
  const affine::TangentState state{p0.x1, p0.x2, d0.x1, d0.x2};

  const bool want_closed = mode == "closed-form" || mode == "both";
  const bool is_mc = s.kind == affine::FamilyKind::Mc;
  if (want_closed && !is_mc)
    throw std::invalid_argument("closed forms exist for the Mc family only");

  if (mode == "closed-form") {
    const affine::GeodesicCurve geo = affine::closed_form_geodesic(s.c, state);
    if (!geo.domain.contains(t_end))
      throw std::domain_error("t_end outside the maximal domain (" +
                              affine::fmt_g(geo.domain.lo, 6) + ", " +
                              affine::fmt_g(geo.domain.hi, 6) + ")");
    std::string csv = "t,x1,x2,dx1,dx2\n";
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
      const double t = t_end * i / n;
      const affine::Point2 x = geo.position(t);
      const auto v = geo.velocity(t);
      csv += affine::fmt_g(t) + "," + affine::fmt_g(x.x1) + "," +
             affine::fmt_g(x.x2) + "," + affine::fmt_g(v[0]) + "," +
             affine::fmt_g(v[1]) + "\n";
    }
    return write_output(cfg, csv);
  }

  const affine::Trajectory traj =
      affine::integrate_geodesic(s.conn, state, t_end, integrator_options(cfg));
  std::string csv;
  if (mode == "integrate") {
    csv = affine::trajectory_csv(traj);
  } else if (mode == "both") {
    const affine::GeodesicCurve geo = affine::closed_form_geodesic(s.c, state);
    csv = "t,x1,x2,dx1,dx2,cf_x1,cf_x2,cf_dx1,cf_dx2\n";
    double max_dev = 0.0;
    for (const auto &row : traj.samples) {
      csv += affine::fmt_g(row.t) + "," + affine::fmt_g(row.x1) + "," +
             affine::fmt_g(row.x2) + "," + affine::fmt_g(row.dx1) + "," +
             affine::fmt_g(row.dx2);
      if (geo.domain.contains(row.t)) {
        const affine::Point2 x = geo.position(row.t);
        const auto v = geo.velocity(row.t);
        csv += "," + affine::fmt_g(x.x1) + "," + affine::fmt_g(x.x2) + "," +
               affine::fmt_g(v[0]) + "," + affine::fmt_g(v[1]);
        for (double dev : {row.x1 - x.x1, row.x2 - x.x2, row.dx1 - v[0],
                           row.dx2 - v[1]})
          max_dev = std::max(max_dev, std::fabs(dev));
      } else {
        csv += ",,,,";
      }
      csv += "\n";
    }
    csv += "# max_deviation=" + affine::fmt_g(max_dev) + "\n";
  } else {
    throw CLI::ValidationError("mode must be integrate|closed-form|both");
  }
  const int rc = write_output(cfg, csv);
  if (rc != kExitOk)
    return rc;
  return traj.outcome == affine::IntegrationOutcome::Escaped ? kExitEscaped
                                                             : kExitOk;
}

int run_sweep(const RunConfig &cfg, const std::string &quotient,
              const std::string &base, int n_dirs, double match_tol) {
  const affine::SurfaceFamily s = affine::surface_from_id(cfg.surface);
  const affine::QuotientSurface q = affine::make_quotient(quotient, s);
  affine::ClassifyOptions opts;
  opts.tol = match_tol;
  const affine::SweepSummary sweep =
      affine::almost_zoll_sweep(q, parse_point(base), n_dirs, opts);
  const std::string summary = affine::sweep_summary_line(sweep);
  std::string csv = affine::sweep_csv(sweep);
  if (cfg.out.empty())
    csv += summary + "\n";
  else
    std::printf("%s\n", summary.c_str());
  const int rc = write_output(cfg, csv);
  if (rc != kExitOk)
    return rc;
  return sweep.almost_zoll ? kExitOk : kExitPatternViolated;
}

int run_figure(const RunConfig &cfg, const std::vector<std::string> &bases) {
  if (bases.empty())
    return kExitOk; // nothing to draw, no file
  const affine::SurfaceFamily s = affine::surface_from_id(cfg.surface);
  if (!(s.kind == affine::FamilyKind::Mc && s.c == 0.0))
    throw std::domain_error(
        "figure panels are drawn for Mc:0; the c > 0 picture is carried over "
        "by the shear diffeomorphism");
  if (cfg.out.empty())
    throw CLI::ValidationError("figure requires --out <path.svg>");
  std::vector<affine::Point2> pts;
  pts.reserve(bases.size());
  for (const std::string &b : bases)
    pts.push_back(parse_point(b));
  const auto panels = affine::figure_panels(pts);
  return write_output(cfg, affine::figure_svg(panels));
}

int run_verify(const RunConfig &cfg, const std::string &suite) {
  const affine::SurfaceFamily s = affine::surface_from_id(cfg.surface);
  std::vector<affine::CheckResult> checks;
  if (suite == "core")
    checks = affine::verify_core(s, cfg.seed);
  else if (suite == "symmetry")
    checks = affine::verify_symmetry(s, cfg.seed);
  else if (suite == "quotient")
    checks = affine::verify_quotient(s, cfg.seed);
  else if (suite == "all")
    checks = affine::verify_all(s, cfg.seed);
  else
    throw CLI::ValidationError("suite must be core|symmetry|quotient|all");
  const int rc = write_output(cfg, affine::report_json(checks));
  if (rc != kExitOk)
    return rc;
  return affine::all_pass(checks) ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"affine surface toolkit: tensors, geodesics, symmetry and "
               "almost-Zoll quotient sweeps"};
  app.require_subcommand(1);

  RunConfig cfg;
  double tol_both = 0.0;
  app.add_option("--surface", cfg.surface,
                 "surface id: Mc:<c>, M0c:<c>, Z3, flat")
      ->capture_default_str();
  app.add_option("--tol-abs", cfg.tol_abs, "integrator absolute tolerance")
      ->capture_default_str();
  app.add_option("--tol-rel", cfg.tol_rel, "integrator relative tolerance")
      ->capture_default_str();
  app.add_option("--tol", tol_both,
                 "override both integrator tolerances (env AFFSURF_TOL)")
      ->envname("AFFSURF_TOL");
  app.add_option("--integrator", cfg.integrator, "rk45 (adaptive) or rk4")
      ->check(CLI::IsMember({"rk45", "rk4"}))
      ->capture_default_str();
  app.add_option("--dt", cfg.fixed_dt, "step size for --integrator rk4")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampled checks")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default: stdout)");
  app.set_config("--config", "", "key=value file overriding the defaults");

  auto *tensor = app.add_subcommand("tensor", "print a tensor at a point");
  std::string what, at;
  tensor->add_option("what", what, "christoffel|ricci|nabla-ricci|alpha")
      ->required();
  tensor->add_option("--at", at, "evaluation point x,y")->required();

  auto *geodesic = app.add_subcommand("geodesic", "emit a geodesic as CSV");
  std::string from = "0,0", dir = "1,0", mode = "integrate";
  double t_end = 1.0;
  geodesic->add_option("--from", from, "initial position x,y");
  geodesic->add_option("--dir", dir, "initial velocity a,b");
  geodesic->add_option("--t-end", t_end, "integration end time")->required();
  geodesic->add_option("--mode", mode, "integrate|closed-form|both");

  auto *sweep = app.add_subcommand(
      "sweep", "classify a fan of directions on a quotient");
  std::string quotient = "cylinder", base = "0,0";
  int n_dirs = 32;
  double match_tol = 1e-6;
  sweep->add_option("--quotient", quotient, "cylinder|moebius");
  sweep->add_option("--base", base, "base point x,y");
  sweep->add_option("--n", n_dirs, "number of directions (even, >= 8)");
  sweep->add_option("--match-tol", match_tol, "position/velocity match tol")
      ->capture_default_str();

  auto *figure = app.add_subcommand(
      "figure", "emit the geodesic-structure panels as SVG");
  std::vector<std::string> bases;
  figure->add_option("--bases", bases, "panel base points x,y ...");

  auto *verify = app.add_subcommand("verify", "run an invariant suite");
  std::string suite = "all";
  verify->add_option("--suite", suite, "core|symmetry|quotient|all");

  CLI11_PARSE(app, argc, argv);

  if (tol_both > 0.0) {
    cfg.tol_abs = tol_both;
    cfg.tol_rel = tol_both;
  }

  try {
    if (*tensor)
      return run_tensor(cfg, what, at);
    if (*geodesic)
      return run_geodesic(cfg, from, dir, t_end, mode);
    if (*sweep)
      return run_sweep(cfg, quotient, base, n_dirs, match_tol);
    if (*figure)
      return run_figure(cfg, bases);
    if (*verify)
      return run_verify(cfg, suite);
  } catch (const CLI::ValidationError &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomainError;
  } catch (const std::domain_error &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomainError;
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomainError;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomainError;
  }
  return kExitOk;
}
