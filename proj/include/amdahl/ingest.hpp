#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amdahl/model.hpp"
#include "amdahl/precision.hpp"

namespace amdahl {

enum class Workload { Hpl, Hpcg, HplAi, Fp0, Other };

/// Benchmark list edition, year plus month.
struct Epoch {
  int year = 0;
  int month = 0;

  auto operator<=>(const Epoch&) const = default;
};

/// One benchmark submission row. r_peak is the nominal peak of the partition
/// actually used (cores_used units), at the operand length of the run.
struct SystemSnapshot {
  std::string name;
  Epoch epoch;
  Workload workload = Workload::Other;
  std::string workload_text;  // original label, kept for Other
  std::uint64_t cores_total = 0;
  std::uint64_t cores_used = 0;
  double rpeak_flops = 0.0;
  double rmax_flops = 0.0;
  std::optional<double> clock_hz;
  std::optional<double> perf_ratio;

  bool operator==(const SystemSnapshot&) const = default;
};

/// Snapshot plus derived quantities.
struct DerivedRecord {
  SystemSnapshot snapshot;
  double efficiency = 0.0;
  /// Absent when cores_used < 2 (flagged, not fatal).
  std::optional<AlphaEstimate> alpha;
  /// Partial-core HPCG runs rescaled to the full machine:
  /// efficiency * (cores_total / cores_used). Absent otherwise.
  std::optional<double> corrected_efficiency;
};

struct CsvDialect {
  char delimiter = ',';
};

/// Mandatory columns: name, epoch, workload, cores_total, cores_used,
/// rpeak_flops, rmax_flops. Optional: clock_hz, perf_ratio. Any column order;
/// header names are case-insensitive. Throws ParseError with line and column
/// for malformed text, IntegrityError naming the record for r_max > r_peak.
std::vector<SystemSnapshot> parse_snapshots(std::istream& in,
                                            const CsvDialect& dialect = {});

/// Inverse of parse_snapshots for valid records (parse of the output yields
/// equal records for values representable in 9 significant digits).
std::string serialize_snapshots(std::span<const SystemSnapshot> snapshots);

DerivedRecord derive(const SystemSnapshot& snapshot);

struct PairedMeasurement {
  std::string name;
  Epoch epoch;
  DualPrecisionMeasurement measurement;
};

struct PairingResult {
  std::vector<PairedMeasurement> pairs;
  std::vector<std::string> warnings;  // unmatched or ambiguous entries
};

/// Matches HPL with HPL-AI rows by exact (name, epoch). perf_ratio comes from
/// the explicit column when present, otherwise r_max(HPL-AI) / r_max(HPL).
PairingResult pair_workloads(std::span<const SystemSnapshot> snapshots);

Workload parse_workload(std::string_view text);
const char* to_string(Workload workload) noexcept;
std::string to_string(const Epoch& epoch);
Epoch parse_epoch(std::string_view text);  // "YYYY-MM"

}  // namespace amdahl
