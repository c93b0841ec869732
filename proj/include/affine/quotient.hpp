#ifndef AFFINE_QUOTIENT_HPP
#define AFFINE_QUOTIENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "affine/catalog.hpp"
#include "affine/geodesic.hpp"
#include "affine/parallel.hpp"
#include "affine/symmetry.hpp"

namespace affine {

// Cylinder: deck Phi = (x1, x2 + 2pi). Moebius strip: deck Psi = (-x1, x2 + pi)
// with Psi o Psi = Phi (double cover).
struct QuotientSurface {
  SurfaceFamily base;
  AffineMapParams deck;
  std::string name;   // "cylinder" or "moebius"
  double shift = 0.0; // x2 advance of the deck generator
  bool flip = false;  // x1 negation per deck power
};

// Throws std::invalid_argument when the deck map is not affine for the base
// connection (checked numerically on a few sample points).
QuotientSurface make_quotient(const std::string &name,
                              const SurfaceFamily &base);

// Canonical representative: x2 reduced to [0, shift), x1 negated once per odd
// deck power on the Moebius strip.
Point2 project(const QuotientSurface &q, const Point2 &x);

// deck^k applied to a point / a tangent vector.
Point2 deck_point(const QuotientSurface &q, int k, const Point2 &x);
std::array<double, 2> deck_vector(const QuotientSurface &q, int k,
                                  const std::array<double, 2> &v);

enum class Closure { Closed, ReturnsToBase, Alienated, Escaped, NotReturning };

std::string to_string(Closure c);

struct ClosureReport {
  Closure outcome = Closure::NotReturning;
  std::optional<double> period;   // set when Closed
  std::optional<double> t_return; // first matching return time
  double position_error = std::numeric_limits<double>::quiet_NaN();
  double velocity_error = std::numeric_limits<double>::quiet_NaN();
  int deck_power = 0;   // signed power identifying the return
  double t_reached = 0; // how far the integration got
};

struct ClassifyOptions {
  double tol = 1e-6;    // position match and (scaled) velocity match
  double t_max = 0.0;   // 0 = derived from c, b and the deck shift
  double null_speed_tol = 1e-10;
  IntegratorOptions integrator{.abs_tol = 1e-12, .rel_tol = 1e-12};
};

// Integrates the geodesic with initial data s, detecting crossings of
// x2 = v + k*shift (x2 is monotone along b != 0 geodesics of the catalog
// families), refines each crossing by bisection, and compares position and
// velocity after undoing the deck power.
ClosureReport classify_geodesic(const QuotientSurface &q,
                                const TangentState &s,
                                const ClassifyOptions &opts = {});

struct SweepEntry {
  int dir_index = 0;
  double angle = 0.0;
  double a = 0.0, b = 0.0;
  ClosureReport report;
};

struct SweepSummary {
  Point2 base;
  std::vector<SweepEntry> entries;
  int closed = 0, alienated = 0, returns_to_base = 0, escaped = 0,
      not_returning = 0;
  bool almost_zoll = false; // exactly the horizontal pair alienated, rest closed
};

// n_dirs evenly spaced unit directions (n_dirs even, >= 8, so the horizontal
// pair is hit exactly); each direction classified independently.
SweepSummary almost_zoll_sweep(const QuotientSurface &q, const Point2 &base,
                               int n_dirs, const ClassifyOptions &opts = {},
                               ExecPolicy policy = ExecPolicy::Parallel);

// max over samples of |deck(T(x)) - T(deck(x))|; zero iff T commutes with the
// deck transformation.
double equivariance_check(const QuotientSurface &q, const AffineMapParams &p,
                          double c, const std::vector<Point2> &samples);

// `dir_index,angle,outcome,period,pos_err,vel_err,t_return` rows; fields
// without a value stay empty.
std::string sweep_csv(const SweepSummary &s);
// `almost_zoll=TRUE closed=30 alienated=2 other=0`
std::string sweep_summary_line(const SweepSummary &s);

} // namespace affine

#endif
