// Times the direction-sweep and Killing-grid kernels with the serial
// reference loop and with the OpenMP schedule, and checks that both produce
// identical results.

#include <chrono>
#include <cstdio>

#include "affine/parallel.hpp"
#include "affine/quotient.hpp"
#include "affine/symmetry.hpp"

using namespace affine;

namespace {

double seconds(const std::function<void()> &fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

double sweep_case(const QuotientSurface &q, int n_dirs, ExecPolicy policy,
                  SweepSummary &out) {
  return seconds([&] {
    out = almost_zoll_sweep(q, Point2{0.0, 0.0}, n_dirs, ClassifyOptions{},
                            policy);
  });
}

double grid_case(const SurfaceFamily &s, int n, ExecPolicy policy,
                 double &out_max) {
  const auto basis = killing_basis(s.c);
  std::vector<double> row_max(static_cast<size_t>(n), 0.0);
  const double t = seconds([&] {
    parallel_for(policy, n, [&](std::ptrdiff_t i) {
      double m = 0.0;
      for (int j = 0; j < n; ++j) {
        const Point2 p{-3.0 + 6.0 * static_cast<double>(i) / (n - 1),
                       -3.0 + 6.0 * j / (n - 1)};
        for (const VectorField2 &X : basis)
          m = std::max(m, killing_residual(s.conn, X, p).max_abs());
      }
      row_max[static_cast<size_t>(i)] = m;
    });
  });
  out_max = 0.0;
  for (double v : row_max)
    out_max = std::max(out_max, v);
  return t;
}

bool same_sweep(const SweepSummary &a, const SweepSummary &b) {
  if (a.entries.size() != b.entries.size())
    return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    const ClosureReport &ra = a.entries[i].report;
    const ClosureReport &rb = b.entries[i].report;
    if (ra.outcome != rb.outcome)
      return false;
    if (ra.period.has_value() != rb.period.has_value())
      return false;
    if (ra.period && *ra.period != *rb.period)
      return false;
  }
  return true;
}

} // namespace

int main(int argc, char **argv) {
  int n_dirs = 256;
  int grid_n = 160;
  if (argc > 1)
    n_dirs = std::atoi(argv[1]);
  if (argc > 2)
    grid_n = std::atoi(argv[2]);

  std::printf("threads available: %d\n\n", hardware_threads());

  const SurfaceFamily mc0 = make_surface(FamilyKind::Mc, 0.0);
  const QuotientSurface cyl = make_quotient("cylinder", mc0);

  SweepSummary serial_sweep, parallel_sweep;
  const double ts = sweep_case(cyl, n_dirs, ExecPolicy::Serial, serial_sweep);
  const double tp =
      sweep_case(cyl, n_dirs, ExecPolicy::Parallel, parallel_sweep);
  std::printf("sweep (cylinder over Mc:0, %d directions)\n", n_dirs);
  std::printf("  serial    %8.3f s\n", ts);
  std::printf("  parallel  %8.3f s   speedup %.2fx   identical: %s\n\n", tp,
              ts / tp, same_sweep(serial_sweep, parallel_sweep) ? "yes" : "NO");

  const SurfaceFamily mc1 = make_surface(FamilyKind::Mc, 1.0);
  double m_serial = 0.0, m_parallel = 0.0;
  const double gs = grid_case(mc1, grid_n, ExecPolicy::Serial, m_serial);
  const double gp = grid_case(mc1, grid_n, ExecPolicy::Parallel, m_parallel);
  std::printf("killing residual grid (Mc:1, %dx%d points)\n", grid_n, grid_n);
  std::printf("  serial    %8.3f s\n", gs);
  std::printf("  parallel  %8.3f s   speedup %.2fx   identical: %s\n", gp,
              gs / gp, m_serial == m_parallel ? "yes" : "NO");
  return 0;
}
