#include "amdahl/precision.hpp"

#include <cmath>
#include <string>

namespace amdahl {

namespace {

void check_times(double time16, double time64, double operand_ratio) {
  if (!std::isfinite(time16) || !std::isfinite(time64) || time16 < 0.0 ||
      time64 < 0.0) {
    throw std::invalid_argument("sequential time fractions must be finite and >= 0");
  }
  if (!(operand_ratio > 1.0) || !std::isfinite(operand_ratio)) {
    throw std::invalid_argument("operand ratio must be greater than 1");
  }
  if (time64 < time16) {
    throw InvertedTimesError(
        "time64 < time16: the longer operands cannot take less sequential time");
  }
  if (time64 > operand_ratio * time16) {
    throw NegativeHousekeepingError(
        "time64 > ratio * time16 would require negative length-independent time");
  }
}

}  // namespace

DualPrecisionMeasurement::DualPrecisionMeasurement(double e64, double e16,
                                                   std::uint64_t units, double ratio)
    : eff64(e64), eff16(e16), n(units), perf_ratio(ratio) {
  if (!(eff64 > 0.0) || eff64 > 1.0 || !(eff16 > 0.0) || eff16 > 1.0) {
    throw std::invalid_argument("efficiencies must lie in (0, 1]");
  }
  if (!std::isfinite(perf_ratio) || perf_ratio < 1.0 || perf_ratio > 4.0) {
    throw std::invalid_argument(
        "the reduced-precision performance ratio must lie in [1, 4]");
  }
  if (n < 2) {
    throw DegenerateInstanceError(
        "dual-precision analysis needs at least two units");
  }
}

NormalizedTimes times_from_measurement(const DualPrecisionMeasurement& m) {
  const double oma64 = alpha_from_efficiency(m.eff64, m.n).one_minus_alpha();
  const double oma16 = alpha_from_efficiency(m.eff16, m.n).one_minus_alpha();
  // The reduced-precision run is perf_ratio times shorter, so its sequential
  // fraction must shrink by the same ratio on the common wall-clock scale.
  return NormalizedTimes{oma64, oma16 / m.perf_ratio};
}

DecompositionResult decompose_serial(double time16, double time64,
                                     double operand_ratio) {
  check_times(time16, time64, operand_ratio);
  const double f16 = (time64 - time16) / (operand_ratio - 1.0);
  const double f0 = time16 - f16;
  return DecompositionResult{time64, time16, f0 < 0.0 ? 0.0 : f0, f16,
                             SummingModel::Serial, operand_ratio};
}

DecompositionResult decompose_timeaware(double time16, double time64,
                                        double operand_ratio) {
  check_times(time16, time64, operand_ratio);
  const double t16sq = time16 * time16;
  const double t64sq = time64 * time64;
  double f16sq = (t64sq - t16sq) / (operand_ratio * operand_ratio - 1.0);
  if (f16sq < 0.0) f16sq = 0.0;  // rounding at the time64 = time16 boundary
  const double f16 = std::sqrt(f16sq);
  double f0sq = t16sq - f16sq;
  if (f0sq < 0.0) f0sq = 0.0;  // rounding at the time64 = ratio * time16 boundary
  const double f0 = std::sqrt(f0sq);
  return DecompositionResult{time64, time16, f0, f16, SummingModel::TimeAware,
                             operand_ratio};
}

double expected_perf_ratio(const DecompositionResult& d) {
  if (d.f0 == 0.0 && d.f16 == 0.0) return 1.0;
  if (d.model == SummingModel::Serial) {
    return (d.f0 + d.operand_ratio * d.f16) / (d.f0 + d.f16);
  }
  const double r2 = d.operand_ratio * d.operand_ratio;
  return std::sqrt((d.f0 * d.f0 + r2 * d.f16 * d.f16) /
                   (d.f0 * d.f0 + d.f16 * d.f16));
}

AlphaEstimate fp0_alpha(double e_ops, double nominal_ops, std::uint64_t n) {
  if (!(e_ops > 0.0) || !std::isfinite(e_ops) || !(nominal_ops > 0.0) ||
      !std::isfinite(nominal_ops)) {
    throw std::invalid_argument("operation rates must be positive");
  }
  if (e_ops > nominal_ops * (1.0 + 1e-12)) {
    throw InconsistentMeasurementError(
        "effective operation rate exceeds the nominal rate");
  }
  const double eff = e_ops / nominal_ops;
  return alpha_from_efficiency(eff > 1.0 ? 1.0 : eff, n);
}

const char* to_string(SummingModel model) noexcept {
  switch (model) {
    case SummingModel::Serial: return "serial";
    case SummingModel::TimeAware: return "timeaware";
  }
  return "serial";
}

}  // namespace amdahl
