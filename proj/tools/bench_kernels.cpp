// amdahl-bench: wall-clock comparison of the OpenMP grid kernels against
// their serial reference implementations, with a bitwise equality check.
//
// Two kernels fan out over independent work items:
//   surface  — efficiency over an (n, 1 - alpha) grid
//   sweep    — the fork-join timeline across worker counts
//
// Usage: amdahl-bench [repeats]   (default 5)

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "amdahl/predict.hpp"
#include "amdahl/simulator.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double best_of(int repeats, F&& run) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = Clock::now();
    run();
    const double elapsed = seconds_since(start);
    if (elapsed < best) best = elapsed;
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %6.2fx   %s\n",
              name, serial_s, parallel_s, serial_s / parallel_s,
              equal ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  if (repeats < 1) {
    std::fprintf(stderr, "repeats must be at least 1\n");
    return 2;
  }

  using namespace amdahl;

  // Surface kernel: a dense grid big enough to dominate thread start-up.
  const auto n_axis = log_space_counts(2, 2000000000ULL, 1200);
  const auto oma_axis = log_space(1e-14, 1e-2, 1200);

  SurfaceGrid surface_parallel_result;
  SurfaceGrid surface_serial_result;
  const double surface_parallel_s = best_of(repeats, [&] {
    surface_parallel_result = surface(n_axis, oma_axis);
  });
  const double surface_serial_s = best_of(repeats, [&] {
    surface_serial_result = surface_serial(n_axis, oma_axis);
  });
  const bool surface_equal =
      surface_parallel_result.values == surface_serial_result.values;
  report("efficiency surface", surface_serial_s, surface_parallel_s,
         surface_equal);

  // Sweep kernel: many worker counts, moderate per-point cost.
  SimConfig cfg;
  cfg.dispatch_cycles = 2;
  cfg.join_cycles = 1;
  cfg.payload_cycles = 50000;
  cfg.iterations = 4;
  cfg.per_iteration_seq_cycles = 100;
  cfg.looping = {LoopingForm::LogInN, 1e-4};
  const auto grid = log_space_counts(2, 100000000ULL, 20000);

  std::vector<std::pair<std::uint64_t, SimOutcome>> sweep_parallel_result;
  std::vector<std::pair<std::uint64_t, SimOutcome>> sweep_serial_result;
  const double sweep_parallel_s = best_of(repeats, [&] {
    sweep_parallel_result = sweep_n(cfg, grid);
  });
  const double sweep_serial_s = best_of(repeats, [&] {
    sweep_serial_result = sweep_n_serial(cfg, grid);
  });
  bool sweep_equal = sweep_parallel_result.size() == sweep_serial_result.size();
  if (sweep_equal) {
    for (std::size_t i = 0; i < sweep_parallel_result.size(); ++i) {
      const auto& [pn, po] = sweep_parallel_result[i];
      const auto& [sn, so] = sweep_serial_result[i];
      if (pn != sn || po.total_cycles != so.total_cycles ||
          po.speedup != so.speedup ||
          po.payload_fraction != so.payload_fraction ||
          po.idle_fraction != so.idle_fraction) {
        sweep_equal = false;
        break;
      }
    }
  }
  report("fork-join sweep", sweep_serial_s, sweep_parallel_s, sweep_equal);

  return (surface_equal && sweep_equal) ? 0 : 1;
}
