#include "affine/geodesic.hpp"

#include <algorithm>
#include <cstdio>

namespace affine {

Interval geodesic_domain(double c, const TangentState &s) {
  Interval dom;
  if (c == 0.0 || std::fabs(s.b) < kSmallB)
    return dom;
  const double bc = s.b * c;
  if (bc > 0.0)
    dom.lo = -1.0 / (2.0 * bc);
  else
    dom.hi = -1.0 / (2.0 * bc);
  return dom;
}

Point2 GeodesicCurve::position(double t) const {
  if (!domain.contains(t))
    throw std::domain_error("geodesic parameter outside maximal domain");
  const double u = state.u, v = state.v, a = state.a, b = state.b;
  if (std::fabs(b) < kSmallB)
    return Point2{u + a * t, v};
  if (c == 0.0)
    return Point2{u * std::cos(b * t) + (a / b) * std::sin(b * t), v + b * t};
  const double w = 1.0 + 2.0 * b * c * t;
  const double theta = std::log(w) / (2.0 * c);
  const double x1 = (std::sqrt(w) / b) *
                    (b * u * std::cos(theta) + (a - b * c * u) * std::sin(theta));
  return Point2{x1, v + theta};
}

std::array<double, 2> GeodesicCurve::velocity(double t) const {
  if (!domain.contains(t))
    throw std::domain_error("geodesic parameter outside maximal domain");
  const double u = state.u, a = state.a, b = state.b;
  if (std::fabs(b) < kSmallB)
    return {a, 0.0};
  if (c == 0.0)
    return {-u * b * std::sin(b * t) + a * std::cos(b * t), b};
  const double w = 1.0 + 2.0 * b * c * t;
  const double theta = std::log(w) / (2.0 * c);
  const double A = b * u, B = a - b * c * u;
  const double dx1 = (c * (A * std::cos(theta) + B * std::sin(theta)) +
                      (B * std::cos(theta) - A * std::sin(theta))) /
                     std::sqrt(w);
  return {dx1, b / w};
}

double GeodesicCurve::tau(double t) const {
  if (c <= 0.0 || std::fabs(state.b) < kSmallB)
    throw std::domain_error("tau is defined only for c > 0 and b != 0");
  if (!domain.contains(t))
    throw std::domain_error("geodesic parameter outside maximal domain");
  return std::log(1.0 + 2.0 * state.b * c * t);
}

GeodesicCurve closed_form_geodesic(double c, const TangentState &s) {
  if (c < 0.0)
    throw std::invalid_argument("closed form expects c >= 0");
  if (!s.finite())
    throw std::invalid_argument("non-finite initial data");
  GeodesicCurve g;
  g.c = c;
  g.state = s;
  g.domain = geodesic_domain(c, s);
  return g;
}

double speed(double c, const TangentState &s, double t) {
  const GeodesicCurve g = closed_form_geodesic(c, s);
  const double dx2 = g.velocity(t)[1];
  return (1.0 + c * c) * dx2 * dx2;
}

Point2 focusing_point(double c, const Point2 &base, int b_sign) {
  if (c != 0.0)
    throw not_implemented_error(
        "focusing points are computed for c = 0 only; map the c > 0 picture "
        "through the shear diffeomorphism");
  if (b_sign == 0)
    throw std::invalid_argument("b_sign must be +1 or -1");
  const double sgn = b_sign > 0 ? 1.0 : -1.0;
  return Point2{-base.x1, base.x2 + sgn * M_PI};
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

using State4 = std::array<double, 4>;

State4 rhs(const ConnectionField &conn, const State4 &y) {
  const ChristoffelValue g = conn.eval(Point2{y[0], y[1]});
  const double vel[2] = {y[2], y[3]};
  State4 dy{y[2], y[3], 0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        acc -= g.g[i][j][k] * vel[i] * vel[j];
    dy[2 + k] = acc;
  }
  return dy;
}

constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};

// difference between the 5th and 4th order solutions
constexpr double kE[7] = {71.0 / 57600,  0.0,          -71.0 / 16695,
                          71.0 / 1920,   -17253.0 / 339200,
                          22.0 / 525,    -1.0 / 40};

bool state_ok(const State4 &y, double guard) {
  for (double v : y)
    if (!std::isfinite(v) || std::fabs(v) > guard)
      return false;
  return true;
}

} // namespace

std::array<double, 4> flow_to(const ConnectionField &conn, const State4 &y0,
                              double t0, double t1, int substeps) {
  State4 y = y0;
  const double h = (t1 - t0) / substeps;
  if (h == 0.0)
    return y;
  for (int s = 0; s < substeps; ++s) {
    const State4 k1 = rhs(conn, y);
    State4 tmp;
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + 0.5 * h * k1[i];
    const State4 k2 = rhs(conn, tmp);
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + 0.5 * h * k2[i];
    const State4 k3 = rhs(conn, tmp);
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + h * k3[i];
    const State4 k4 = rhs(conn, tmp);
    for (int i = 0; i < 4; ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

Trajectory integrate_geodesic(const ConnectionField &conn,
                              const TangentState &s, double t_end,
                              const IntegratorOptions &opts,
                              const StepCallback &on_step) {
  if (!s.finite())
    throw std::invalid_argument("non-finite initial data");
  Trajectory traj;
  State4 y{s.u, s.v, s.a, s.b};
  double t = 0.0;
  const double dir = t_end >= 0.0 ? 1.0 : -1.0;
  traj.samples.push_back({t, y[0], y[1], y[2], y[3]});

  if (t_end == 0.0)
    return traj;

  if (opts.fixed_step) {
    const double dt = dir * std::fabs(opts.fixed_dt);
    const long n = static_cast<long>(std::ceil(std::fabs(t_end / dt))) ;
    for (long i = 0; i < n; ++i) {
      const double t_next = (i + 1 == n) ? t_end : t + dt;
      const State4 y_next = flow_to(conn, y, t, t_next, 1);
      if (!state_ok(y_next, opts.blowup_guard)) {
        traj.outcome = IntegrationOutcome::Escaped;
        return traj;
      }
      const TrajectorySample prev = traj.samples.back();
      const TrajectorySample cur{t_next, y_next[0], y_next[1], y_next[2],
                                 y_next[3]};
      traj.samples.push_back(cur);
      ++traj.steps;
      y = y_next;
      t = t_next;
      if (on_step && !on_step(prev, cur)) {
        traj.outcome = IntegrationOutcome::Stopped;
        return traj;
      }
    }
    return traj;
  }

  double h = dir * std::min({0.01, std::fabs(t_end) / 10.0, opts.max_step});
  State4 k[7];
  k[0] = rhs(conn, y);
  while (dir * (t_end - t) > 0.0) {
    if (std::fabs(h) > opts.max_step)
      h = dir * opts.max_step;
    if (dir * (t + h - t_end) > 0.0)
      h = t_end - t;

    State4 y_stage, y5{};
    for (int stage = 1; stage < 7; ++stage) {
      for (int i = 0; i < 4; ++i) {
        double acc = y[i];
        for (int j = 0; j < stage; ++j)
          acc += h * kA[stage][j] * k[j][i];
        y_stage[i] = acc;
      }
      if (!state_ok(y_stage, opts.blowup_guard)) {
        traj.outcome = IntegrationOutcome::Escaped;
        return traj;
      }
      k[stage] = rhs(conn, y_stage);
    }
    y5 = y_stage; // stage 7 uses the 5th-order weights (FSAL)

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      double e = 0.0;
      for (int j = 0; j < 7; ++j)
        e += kE[j] * k[j][i];
      e *= h;
      const double scale =
          opts.abs_tol +
          opts.rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      err = std::max(err, std::fabs(e) / scale);
    }

    if (err <= 1.0) {
      t += h;
      const TrajectorySample prev = traj.samples.back();
      y = y5;
      if (!state_ok(y, opts.blowup_guard)) {
        traj.outcome = IntegrationOutcome::Escaped;
        return traj;
      }
      const TrajectorySample cur{t, y[0], y[1], y[2], y[3]};
      traj.samples.push_back(cur);
      ++traj.steps;
      traj.max_error_estimate = std::max(traj.max_error_estimate, err);
      k[0] = k[6]; // FSAL
      if (on_step && !on_step(prev, cur)) {
        traj.outcome = IntegrationOutcome::Stopped;
        return traj;
      }
      if (traj.steps >= opts.max_steps) {
        traj.outcome = IntegrationOutcome::Escaped;
        return traj;
      }
    } else {
      ++traj.rejected;
    }

    if (dir * (t_end - t) <= 0.0)
      break;
    const double fac =
        std::clamp(0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2), 0.2, 5.0);
    h *= fac;
    if (std::fabs(h) < opts.min_step) {
      traj.outcome = IntegrationOutcome::Escaped;
      return traj;
    }
  }
  return traj;
}

std::string trajectory_csv(const Trajectory &traj) {
  std::string out = "t,x1,x2,dx1,dx2\n";
  char buf[160];
  for (const auto &s : traj.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                  s.x1, s.x2, s.dx1, s.dx2);
    out += buf;
  }
  return out;
}

} // namespace affine
