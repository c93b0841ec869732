#ifndef AFFINE_GEODESIC_HPP
#define AFFINE_GEODESIC_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "affine/geometry.hpp"

namespace affine {

// Geodesic initial data: base point (u,v), velocity (a,b).
struct TangentState {
  double u = 0.0, v = 0.0;
  double a = 0.0, b = 0.0;

  bool finite() const {
    return std::isfinite(u) && std::isfinite(v) && std::isfinite(a) &&
           std::isfinite(b);
  }
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t > lo && t < hi; }
};

// Maximal parameter interval of the closed-form geodesic: all of R when
// c = 0 or b = 0, otherwise the component of {1 + 2bct > 0} containing 0.
Interval geodesic_domain(double c, const TangentState &s);

// closed-form branch switch; below this |b| the straight-line branch is used
inline constexpr double kSmallB = 1e-12;

// Exact geodesic of the Mc family.
//   c = 0, b != 0: (u cos(bt) + (a/b) sin(bt), v + bt)
//   c > 0, b != 0: (sqrt(w)/b)(bu cos(th) + (a-bcu) sin(th)), v + th
//                  with w = 1+2bct, th = log(w)/(2c)
//   b = 0:         (u + at, v)
// Velocities are the analytic t-derivatives of these expressions.
struct GeodesicCurve {
  double c = 0.0;
  TangentState state;
  Interval domain;

  Point2 position(double t) const;
  std::array<double, 2> velocity(double t) const;
  // log(1 + 2bct); meaningful for c > 0, b != 0
  double tau(double t) const;
};

GeodesicCurve closed_form_geodesic(double c, const TangentState &s);

// rho(sigma', sigma') = (1+c^2) (x2'(t))^2 along the closed form; the
// "speed". Zero identically exactly for the b = 0 (alienated) directions.
double speed(double c, const TangentState &s, double t);

// Common meeting point of the b>0 (or b<0) geodesic family through `base`
// on the c = 0 surface: (-u, v + sign*pi). Not implemented for c > 0 (the
// c > 0 picture is carried over by the shear diffeomorphism instead).
Point2 focusing_point(double c, const Point2 &base, int b_sign);

// ---------------------------------------------------------------------------
// Numerical integration of x''^k + Gamma_ij^k x'^i x'^j = 0

enum class IntegrationOutcome { ReachedEnd, Escaped, Stopped };

struct IntegratorOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-13;      // below this the run reports Escaped
  double blowup_guard = 1e8;    // |x| or |x'| beyond this reports Escaped
  long max_steps = 4000000;
  bool fixed_step = false;      // classical RK4 at fixed dt (deterministic)
  double fixed_dt = 1e-3;
};

struct TrajectorySample {
  double t, x1, x2, dx1, dx2;
};

struct Trajectory {
  std::vector<TrajectorySample> samples; // one per accepted step, incl. t=0
  IntegrationOutcome outcome = IntegrationOutcome::ReachedEnd;
  long steps = 0;
  long rejected = 0;
  double max_error_estimate = 0.0;

  double last_t() const { return samples.empty() ? 0.0 : samples.back().t; }
};

// Called after each accepted step; return false to stop (outcome Stopped).
using StepCallback =
    std::function<bool(const TrajectorySample &, const TrajectorySample &)>;

Trajectory integrate_geodesic(const ConnectionField &conn,
                              const TangentState &s, double t_end,
                              const IntegratorOptions &opts = {},
                              const StepCallback &on_step = nullptr);

// Fixed-step RK4 flow of the geodesic equation from state y0 = (x1,x2,dx1,dx2)
// at t0 to t1; used for event refinement inside an accepted step.
std::array<double, 4> flow_to(const ConnectionField &conn,
                              const std::array<double, 4> &y0, double t0,
                              double t1, int substeps = 8);

// Header `t,x1,x2,dx1,dx2`, one row per sample, 17 significant digits.
std::string trajectory_csv(const Trajectory &traj);

// First t in (t_lo, hint window) with x2(t) == target along the integrated
// geodesic; generic event locator used by the quotient classifier and the
// unparametrized-geodesic tests. Returns the refined time and state.
struct CrossingEvent {
  bool found = false;
  double t = 0.0;
  std::array<double, 4> y{};
};

} // namespace affine

#endif
