#pragma once

#include <cstdint>

#include "amdahl/model.hpp"

namespace amdahl {

/// Paired full- and reduced-precision runs of one machine.
/// perf_ratio is the measured payload-performance ratio between the
/// reduced- and full-precision runs at equal operation counts.
struct DualPrecisionMeasurement {
  double eff64;
  double eff16;
  std::uint64_t n;
  double perf_ratio;

  DualPrecisionMeasurement(double e64, double e16, std::uint64_t units,
                           double ratio);
};

/// How per-operand-length sequential times add up to the measured totals.
/// Serial: time64 = f0 + r * f16. TimeAware: time64^2 = f0^2 + (r * f16)^2.
enum class SummingModel { Serial, TimeAware };

/// Sequential time split into an operand-length-independent part f0 and a
/// part f16 that scales with operand length. Times are fractions of the
/// full-precision wall clock, like (1 - alpha).
struct DecompositionResult {
  double time64;
  double time16;
  double f0;
  double f16;
  SummingModel model;
  double operand_ratio;
};

struct NormalizedTimes {
  double time64;
  double time16;
};

/// Sequential-time fractions on a common (full-precision) wall-clock scale:
/// time64 = (1 - alpha64), time16 = (1 - alpha16) / perf_ratio.
NormalizedTimes times_from_measurement(const DualPrecisionMeasurement& m);

/// Splits (time16, time64) with times adding linearly:
/// f16 = (time64 - time16) / (r - 1), f0 = time16 - f16.
/// Feasible band: time16 <= time64 <= r * time16, boundaries included.
/// Throws InvertedTimesError below the band, NegativeHousekeepingError above.
DecompositionResult decompose_serial(double time16, double time64,
                                     double operand_ratio = 4.0);

/// Splits (time16, time64) with times adding in quadrature:
/// f16 = sqrt((time64^2 - time16^2) / (r^2 - 1)), f0 = sqrt(time16^2 - f16^2).
/// Same feasible band as decompose_serial (it follows from f0^2 >= 0).
DecompositionResult decompose_timeaware(double time16, double time64,
                                        double operand_ratio = 4.0);

/// time64 / time16 reconstructed from (f0, f16) under the result's model.
/// Equals operand_ratio exactly when f0 = 0, and 1 when f16 = 0.
double expected_perf_ratio(const DecompositionResult& d);

/// Sequential fraction of a precision-independent (integer/logic ops)
/// workload: treats e_ops / nominal_ops as an efficiency and inverts it.
AlphaEstimate fp0_alpha(double e_ops, double nominal_ops, std::uint64_t n);

const char* to_string(SummingModel model) noexcept;

}  // namespace amdahl
