#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "amdahl/looping.hpp"
#include "amdahl/model.hpp"

namespace amdahl {

/// Deterministic fork-join timeline in integer clock cycles.
/// One coordinator dispatches n workers one at a time (worker i starts once
/// its own dispatch slot ends, at i * d_eff), each worker runs payload_cycles,
/// the coordinator joins them sequentially after the last finisher, then runs
/// per_iteration_seq_cycles before the next iteration. A period floor models
/// workloads that cannot start the next iteration early.
struct SimConfig {
  std::uint64_t n = 1;
  std::uint64_t dispatch_cycles = 0;       // coordinator cycles to start one worker
  std::uint64_t join_cycles = 0;           // coordinator cycles to collect one result
  std::uint64_t payload_cycles = 0;        // per-worker payload per iteration
  std::uint64_t iterations = 1;
  std::uint64_t per_iteration_seq_cycles = 0;
  std::uint64_t period_floor_cycles = 0;   // 0 = no floor
  LoopingSpec looping;
};

struct SimOutcome {
  std::uint64_t total_cycles = 0;
  double speedup = 1.0;
  /// Empty when n < 2 or the run shows a slowdown (speedup < 1).
  std::optional<AlphaEstimate> alpha_eff;
  double payload_fraction = 0.0;
  double idle_fraction = 0.0;
  std::uint64_t payload_cycles_total = 0;
  std::uint64_t overhead_cycles_total = 0;
  std::uint64_t idle_cycles_total = 0;
};

/// Runs the timeline. Degenerate configs produce degenerate but defined
/// outcomes; n must be >= 1.
/// Cycle accounting is exact: n * total_cycles =
/// payload_cycles_total + overhead_cycles_total + idle_cycles_total.
SimOutcome simulate(const SimConfig& cfg);

/// Single-unit reference the speedup is measured against:
/// n * payload_cycles * iterations + iterations * per_iteration_seq_cycles.
std::uint64_t single_unit_reference_cycles(const SimConfig& cfg);

/// Runs simulate at each unit count. n_values must be non-empty and strictly
/// ascending. Points are independent; this variant fans out with OpenMP.
std::vector<std::pair<std::uint64_t, SimOutcome>> sweep_n(
    const SimConfig& base, std::span<const std::uint64_t> n_values);

/// Serial reference for sweep_n; produces bit-identical results.
std::vector<std::pair<std::uint64_t, SimOutcome>> sweep_n_serial(
    const SimConfig& base, std::span<const std::uint64_t> n_values);

/// One long uninterrupted payload burst per unit.
SimConfig hpl_preset(std::uint64_t n = 100000);

/// Many shorter iterations with coordinator compute in between.
SimConfig hpcg_preset(std::uint64_t n = 100000);

/// Biology-paced control loop: every iteration is pinned to a 1 ms period
/// (1e6 cycles at 1 GHz) regardless of how fast the workers finish.
SimConfig brain_preset(std::uint64_t n = 100000);

}  // namespace amdahl
