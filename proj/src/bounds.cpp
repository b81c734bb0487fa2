#include "amdahl/bounds.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace amdahl {

namespace {

BoundResult make_result(BoundKind kind, double sequential_cycles,
                        double window_cycles) {
  BoundResult r;
  r.kind = kind;
  r.sequential_cycles = sequential_cycles;
  r.window_cycles = window_cycles;
  if (sequential_cycles == 0.0) {
    r.one_minus_alpha_bound = 0.0;
    r.max_gain = std::numeric_limits<double>::infinity();
  } else {
    r.one_minus_alpha_bound = sequential_cycles / window_cycles;
    r.max_gain = window_cycles / sequential_cycles;
  }
  return r;
}

}  // namespace

MeasurementWindow::MeasurementWindow(double duration, double clock)
    : duration_s(duration), clock_hz(clock) {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw std::invalid_argument("window duration must be positive");
  }
  if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) {
    throw std::invalid_argument("clock rate must be positive");
  }
  if (total_cycles() < 1.0) {
    throw std::invalid_argument("window must span at least one clock cycle");
  }
}

BoundResult clock_quantum_bound(const MeasurementWindow& w) {
  return make_result(BoundKind::ClockQuantum, 2.0, w.total_cycles());
}

BoundResult propagation_bound(double distance_m, const MeasurementWindow& w) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw std::invalid_argument("cable distance must be positive");
  }
  const double round_trip_s = 2.0 * distance_m / kSpeedOfLight;
  const double cycles = std::ceil(round_trip_s * w.clock_hz);
  return make_result(BoundKind::Propagation, cycles < 1.0 ? 1.0 : cycles,
                     w.total_cycles());
}

BoundResult addressing_bound(std::uint64_t n, double cluster_factor,
                             const MeasurementWindow& w) {
  if (n == 0) throw std::invalid_argument("unit count must be at least 1");
  if (!std::isfinite(cluster_factor) || cluster_factor < 1.0 ||
      cluster_factor > static_cast<double>(n)) {
    throw InvalidClusteringError(
        "cluster factor must lie in [1, n], got " + std::to_string(cluster_factor) +
        " for n=" + std::to_string(n));
  }
  const double cycles = std::ceil(static_cast<double>(n) / cluster_factor);
  return make_result(BoundKind::Addressing, cycles, w.total_cycles());
}

BoundResult os_bound(std::uint64_t context_switch_cycles, const MeasurementWindow& w) {
  // Fork and join each cost one context switch.
  const double cycles = 2.0 * static_cast<double>(context_switch_cycles);
  return make_result(BoundKind::OsContextSwitch, cycles, w.total_cycles());
}

BoundResult access_scaling(const BoundResult& bound, double access_factor) {
  if (!std::isfinite(access_factor) || access_factor < 1.0 || access_factor > 100.0) {
    throw OutOfModelRangeError("access factor must lie in [1, 100], got " +
                               std::to_string(access_factor));
  }
  BoundResult scaled = make_result(
      bound.kind, std::ceil(bound.sequential_cycles * access_factor),
      bound.window_cycles);
  scaled.kind = BoundKind::InstructionAccess;
  return scaled;
}

ContributionLabel to_contribution_label(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::ClockQuantum: return ContributionLabel::Other;
    case BoundKind::Propagation: return ContributionLabel::Propagation;
    case BoundKind::Addressing: return ContributionLabel::Addressing;
    case BoundKind::OsContextSwitch: return ContributionLabel::Os;
    case BoundKind::InstructionAccess: return ContributionLabel::Compute;
  }
  return ContributionLabel::Other;
}

ContributionSet combine(std::span<const BoundResult> bounds) {
  ContributionSet set;
  if (bounds.empty()) return set;
  const double window = bounds.front().window_cycles;
  constexpr std::array<ContributionLabel, 7> kLabelOrder = {
      ContributionLabel::Net,        ContributionLabel::Compute,
      ContributionLabel::Os,         ContributionLabel::Sw,
      ContributionLabel::Addressing, ContributionLabel::Propagation,
      ContributionLabel::Other};
  for (const auto& b : bounds) {
    if (b.window_cycles != window) {
      throw std::invalid_argument("bounds can only combine over one shared window");
    }
  }
  for (ContributionLabel label : kLabelOrder) {
    double total = 0.0;
    bool seen = false;
    for (const auto& b : bounds) {
      if (to_contribution_label(b.kind) == label) {
        total += b.one_minus_alpha_bound;
        seen = true;
      }
    }
    if (seen) set.add(label, total);
  }
  return set;
}

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::ClockQuantum: return "clock_quantum";
    case BoundKind::Propagation: return "propagation";
    case BoundKind::Addressing: return "addressing";
    case BoundKind::OsContextSwitch: return "os_context_switch";
    case BoundKind::InstructionAccess: return "instruction_access";
  }
  return "clock_quantum";
}

}  // namespace amdahl
