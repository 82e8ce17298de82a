// Timing harness for the parallel kernels: each one is run with the OpenMP
// path disabled and enabled on the same inputs, so the table shows the
// serial/parallel ratio on this machine.  Not a correctness test -- the
// unit tests already pin serial == parallel results.
#include <chrono>
#include <cstdio>
#include <functional>

#include "brp/bounds.hpp"
#include "brp/driver.hpp"
#include "brp/hopf.hpp"
#include "brp/lift.hpp"
#include "brp/sigma.hpp"
#include "brp/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace brp;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, const std::function<void(bool)>& kernel) {
  const double serial = time_ms([&] { kernel(false); }, 3);
  const double parallel = time_ms([&] { kernel(true); }, 3);
  std::printf("%-24s %10.2f %10.2f %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled at build time\n");
#endif

  const PiecewiseLinearPath driver = sample_fbm(0.55, 256, 9, 1);
  const BranchedLift lift(driver, 2);
  const auto model = make_sigma("tanh", 1, 1, 2, 1.0, 0.8);
  SolveConfig sc;
  sc.alpha = 0.5;
  sc.m = 2.0;
  sc.y0 = Vec::Ones(1);
  sc.steps = 256;
  sc.level = 2;
  const TreePath Y = solve(sc, *model, lift);

  const Forest empty;
  const auto grid = uniform_grid(256);

  std::printf("%-24s %10s %10s %8s\n", "kernel", "serial ms", "parallel",
              "speedup");
  row("order_norm (256 cells)", [&](bool par) {
    const TreeId leaf = make_leaf(0);
    order_norm(lift, Forest::single(make_tree(0, Forest::single(leaf))), 0.5,
               grid, par);
  });
  row("holder_seminorm", [&](bool par) {
    holder_seminorm(Y.times, Y.unit, 0.0, 1.0, 0.5, par);
  });
  row("remainder_norm", [&](bool par) {
    remainder_norm(Y, empty, 0.0, 1.0, 0.5, lift, 1, par);
  });
  row("u_quantity", [&](bool par) {
    u_quantity(*model, empty, nullptr, 0, Y, 0.0, 1.0, lift, 1, par);
  });
  return 0;
}
