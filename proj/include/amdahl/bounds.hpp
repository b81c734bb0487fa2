#pragma once

#include <cstdint>
#include <span>

#include "amdahl/model.hpp"

namespace amdahl {

/// Signal propagation speed used for cable-length bounds, m/s.
inline constexpr double kSpeedOfLight = 2.998e8;

/// Reference network latencies, for presets and documentation only.
inline constexpr double kNicLatencyLowS = 100e-9;
inline constexpr double kNicLatencyHighS = 200e-9;
inline constexpr double kTypicalMessageTimeS = 500e-9;

/// Commonly cited absolute floor on (1 - alpha_eff) for OS-mediated fork/join
/// on an idealized zero-sized system. Kept as a reference constant; the
/// os_bound formula below computes window-dependent values.
inline constexpr double kCitedOsForkJoinFloor = 5e-8;

/// Typical OS context switch cost in clock cycles.
inline constexpr std::uint64_t kTypicalContextSwitchCycles = 20000;

/// The benchmark run a bound is measured against.
struct MeasurementWindow {
  double duration_s;
  double clock_hz;

  MeasurementWindow(double duration, double clock);

  double total_cycles() const noexcept { return duration_s * clock_hz; }
};

enum class BoundKind { ClockQuantum, Propagation, Addressing, OsContextSwitch, InstructionAccess };

/// Lower bound on (1 - alpha_eff) contributed by one mechanism alone, with
/// the matching upper bound on achievable gain. window_cycles is retained so
/// derived bounds (access_scaling, combine) stay consistent.
struct BoundResult {
  BoundKind kind;
  double sequential_cycles;
  double window_cycles;
  double one_minus_alpha_bound;
  double max_gain;
};

/// Two cycles (one fork edge, one join edge) can never parallelize.
BoundResult clock_quantum_bound(const MeasurementWindow& w);

/// Round-trip signal time over distance_m of cable, rounded up to whole
/// cycles. A partial clock period still occupies a full period.
BoundResult propagation_bound(double distance_m, const MeasurementWindow& w);

/// Sequentially addressing n units, cluster_factor of them per step.
/// Throws InvalidClusteringError unless 1 <= cluster_factor <= n.
BoundResult addressing_bound(std::uint64_t n, double cluster_factor,
                             const MeasurementWindow& w);

/// Fork plus join through the operating system: 2 context switches.
BoundResult os_bound(std::uint64_t context_switch_cycles, const MeasurementWindow& w);

/// Rescales a bound for slower instruction or data access (far memory,
/// accelerator hop). Throws OutOfModelRangeError unless 1 <= factor <= 100.
BoundResult access_scaling(const BoundResult& bound, double access_factor);

ContributionLabel to_contribution_label(BoundKind kind) noexcept;

/// Sums bounds sharing one window into named (1 - alpha) contributions.
/// Bounds of the same kind merge into one entry.
ContributionSet combine(std::span<const BoundResult> bounds);

const char* to_string(BoundKind kind) noexcept;

}  // namespace amdahl
