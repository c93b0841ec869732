#include "affine/quotient.hpp"

#include <cstdio>

namespace affine {

QuotientSurface make_quotient(const std::string &name,
                              const SurfaceFamily &base) {
  QuotientSurface q;
  q.base = base;
  q.name = name;
  if (name == "cylinder") {
    q.deck = AffineMapParams{0.0, 0.0, 0.0, 2.0 * M_PI, +1};
    q.shift = 2.0 * M_PI;
    q.flip = false;
  } else if (name == "moebius") {
    q.deck = AffineMapParams{0.0, 0.0, 0.0, M_PI, -1};
    q.shift = M_PI;
    q.flip = true;
  } else {
    throw std::invalid_argument("quotient must be 'cylinder' or 'moebius'");
  }
  // the deck map has to be affine for the base connection
  const ConnectionField pulled =
      pullback_connection(base.conn, chart_of(q.deck, base.c));
  for (const Point2 &p : sample_points(8, 2026)) {
    const ChristoffelValue a = pulled.eval(p);
    const ChristoffelValue b = base.conn.eval(p);
    double diff = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          diff = std::max(diff, std::fabs(a.g[i][j][k] - b.g[i][j][k]));
    if (diff > 1e-10)
      throw std::invalid_argument("deck map is not affine for " +
                                  base.conn.label);
  }
  return q;
}

Point2 deck_point(const QuotientSurface &q, int k, const Point2 &x) {
  const double s = (q.flip && (k % 2 != 0)) ? -1.0 : 1.0;
  return Point2{s * x.x1, x.x2 + k * q.shift};
}

std::array<double, 2> deck_vector(const QuotientSurface &q, int k,
                                  const std::array<double, 2> &v) {
  const double s = (q.flip && (k % 2 != 0)) ? -1.0 : 1.0;
  return {s * v[0], v[1]};
}

Point2 project(const QuotientSurface &q, const Point2 &x) {
  const int k = static_cast<int>(std::floor(x.x2 / q.shift));
  return deck_point(q, -k, x);
}

std::string to_string(Closure c) {
  switch (c) {
  case Closure::Closed:
    return "Closed";
  case Closure::ReturnsToBase:
    return "ReturnsToBase";
  case Closure::Alienated:
    return "Alienated";
  case Closure::Escaped:
    return "Escaped";
  case Closure::NotReturning:
    return "NotReturning";
  }
  return "?";
}

namespace {

double default_t_max(const QuotientSurface &q, const TangentState &s) {
  const double c = q.base.c;
  const double ab = std::fabs(s.b);
  if (ab < kSmallB)
    return 8.0 * M_PI; // horizontal: just give the null check room
  if (c == 0.0)
    return 4.0 * q.shift / ab;
  if (s.b * c > 0.0) {
    // first possible return is at tau = 2 c shift
    return 1.1 * (std::exp(2.0 * c * q.shift) - 1.0) / (2.0 * ab * c);
  }
  // domain ends at 1/(2|b|c); the integrator stops at the blow-up guard
  return 1.0 / (2.0 * ab * c);
}

// rho(v,v) at p for the base connection
double rho_speed(const ConnectionField &conn, const Point2 &p,
                 const std::array<double, 2> &v) {
  const BilinearForm2 rho = ricci_at(conn, p).rho;
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      s += rho.m[i][j] * v[i] * v[j];
  return s;
}

} // namespace

ClosureReport classify_geodesic(const QuotientSurface &q,
                                const TangentState &s,
                                const ClassifyOptions &opts) {
  ClosureReport rep;
  const double t_max = opts.t_max > 0.0 ? opts.t_max : default_t_max(q, s);
  const ConnectionField &conn = q.base.conn;

  const bool horizontal = std::fabs(s.b) < kSmallB;
  const double dir = horizontal ? 0.0 : (s.b > 0.0 ? 1.0 : -1.0);

  bool found = false;
  int next_k = 1; // next crossing multiple to look for
  const Point2 base_pt{s.u, s.v};
  const std::array<double, 2> base_vel{s.a, s.b};
  const double vel_norm = std::hypot(s.a, s.b);

  StepCallback on_step = nullptr;
  if (!horizontal) {
    on_step = [&](const TrajectorySample &from, const TrajectorySample &to) {
      // targets are crossed in order since x2 is monotone along b != 0
      // geodesics of the catalog families
      while (true) {
        const double target = s.v + dir * next_k * q.shift;
        const bool crossed = (from.x2 - target) * (to.x2 - target) <= 0.0 &&
                             from.x2 != to.x2;
        if (!crossed)
          break;
        // bisection refinement inside the accepted step
        std::array<double, 4> y0{from.x1, from.x2, from.dx1, from.dx2};
        double lo = from.t, hi = to.t;
        const double f_lo = from.x2 - target;
        for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
          const double mid = 0.5 * (lo + hi);
          const auto ym = flow_to(conn, y0, from.t, mid);
          if ((ym[1] - target) * f_lo > 0.0)
            lo = mid;
          else
            hi = mid;
        }
        const double t_star = 0.5 * (lo + hi);
        const auto y_star = flow_to(conn, y0, from.t, t_star);
        const int k_signed = dir > 0.0 ? next_k : -next_k;
        const Point2 pos_back =
            deck_point(q, -k_signed, Point2{y_star[0], y_star[1]});
        const auto vel_back =
            deck_vector(q, -k_signed, {y_star[2], y_star[3]});
        const double pos_err = distance(pos_back, base_pt);
        if (pos_err <= opts.tol) {
          const double vel_err = std::hypot(vel_back[0] - base_vel[0],
                                            vel_back[1] - base_vel[1]);
          rep.position_error = pos_err;
          rep.velocity_error = vel_err;
          rep.t_return = t_star;
          rep.deck_power = k_signed;
          if (vel_err <= opts.tol * (1.0 + vel_norm)) {
            rep.outcome = Closure::Closed;
            rep.period = t_star;
          } else {
            rep.outcome = Closure::ReturnsToBase;
          }
          found = true;
          return false; // stop integrating
        }
        ++next_k;
      }
      return true;
    };
  }

  const Trajectory traj =
      integrate_geodesic(conn, s, t_max, opts.integrator, on_step);
  rep.t_reached = traj.last_t();
  if (found)
    return rep;

  if (horizontal) {
    // alienated iff the rho-speed vanishes along the curve and it never
    // rejoins the base orbit (no crossings are possible with x2 frozen)
    double max_speed = 0.0;
    const size_t n = traj.samples.size();
    for (int i = 0; i < 10; ++i) {
      const auto &smp = traj.samples[std::min(n - 1, i * n / 10)];
      max_speed = std::max(
          max_speed, std::fabs(rho_speed(conn, Point2{smp.x1, smp.x2},
                                         {smp.dx1, smp.dx2})));
    }
    rep.outcome = max_speed <= opts.null_speed_tol ? Closure::Alienated
                                                   : Closure::NotReturning;
    return rep;
  }

  rep.outcome = traj.outcome == IntegrationOutcome::Escaped
                    ? Closure::Escaped
                    : Closure::NotReturning;
  return rep;
}

SweepSummary almost_zoll_sweep(const QuotientSurface &q, const Point2 &base,
                               int n_dirs, const ClassifyOptions &opts,
                               ExecPolicy policy) {
  if (n_dirs < 8 || n_dirs % 2 != 0)
    throw std::invalid_argument(
        "n_dirs must be even and at least 8 so the horizontal pair is exact");
  SweepSummary summary;
  summary.base = base;
  summary.entries.resize(static_cast<size_t>(n_dirs));

  parallel_for(policy, n_dirs, [&](std::ptrdiff_t i) {
    SweepEntry &e = summary.entries[static_cast<size_t>(i)];
    e.dir_index = static_cast<int>(i);
    e.angle = 2.0 * M_PI * static_cast<double>(i) / n_dirs;
    double a = std::cos(e.angle);
    double b = std::sin(e.angle);
    // land the cardinal directions exactly
    if (i == 0) {
      a = 1.0;
      b = 0.0;
    } else if (2 * i == n_dirs) {
      a = -1.0;
      b = 0.0;
    } else if (4 * i == n_dirs) {
      a = 0.0;
      b = 1.0;
    } else if (4 * i == 3 * n_dirs) {
      a = 0.0;
      b = -1.0;
    }
    e.a = a;
    e.b = b;
    e.report = classify_geodesic(q, TangentState{base.x1, base.x2, a, b}, opts);
  });

  int horizontals_alienated = 0;
  for (const SweepEntry &e : summary.entries) {
    switch (e.report.outcome) {
    case Closure::Closed:
      ++summary.closed;
      break;
    case Closure::Alienated:
      ++summary.alienated;
      if (e.b == 0.0)
        ++horizontals_alienated;
      break;
    case Closure::ReturnsToBase:
      ++summary.returns_to_base;
      break;
    case Closure::Escaped:
      ++summary.escaped;
      break;
    case Closure::NotReturning:
      ++summary.not_returning;
      break;
    }
  }
  summary.almost_zoll = summary.alienated == 2 && horizontals_alienated == 2 &&
                        summary.closed == n_dirs - 2;
  return summary;
}

double equivariance_check(const QuotientSurface &q, const AffineMapParams &p,
                          double c, const std::vector<Point2> &samples) {
  double r = 0.0;
  for (const Point2 &x : samples) {
    const Point2 a = apply_T(q.deck, c, apply_T(p, c, x));
    const Point2 b = apply_T(p, c, apply_T(q.deck, c, x));
    r = std::max(r, distance(a, b));
  }
  return r;
}

namespace {

void append_num(std::string &out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

} // namespace

std::string sweep_csv(const SweepSummary &s) {
  std::string out = "dir_index,angle,outcome,period,pos_err,vel_err,t_return\n";
  for (const SweepEntry &e : s.entries) {
    out += std::to_string(e.dir_index);
    out += ',';
    append_num(out, e.angle);
    out += ',';
    out += to_string(e.report.outcome);
    out += ',';
    if (e.report.period)
      append_num(out, *e.report.period);
    out += ',';
    if (!std::isnan(e.report.position_error))
      append_num(out, e.report.position_error);
    out += ',';
    if (!std::isnan(e.report.velocity_error))
      append_num(out, e.report.velocity_error);
    out += ',';
    if (e.report.t_return)
      append_num(out, *e.report.t_return);
    out += '\n';
  }
  return out;
}

std::string sweep_summary_line(const SweepSummary &s) {
  const int other = s.returns_to_base + s.escaped + s.not_returning;
  std::string line = "almost_zoll=";
  line += s.almost_zoll ? "TRUE" : "FALSE";
  line += " closed=" + std::to_string(s.closed);
  line += " alienated=" + std::to_string(s.alienated);
  line += " other=" + std::to_string(other);
  return line;
}

} // namespace affine
