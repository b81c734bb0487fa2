#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amdahl/errors.hpp"

namespace amdahl {

/// Where an AlphaEstimate came from.
enum class AlphaSource { FromEfficiency, FromSpeedup, FromContributions, Assumed };

/// Parallelizable fraction alpha of a workload, with the sequential remainder
/// (1 - alpha) stored explicitly. The systems of interest sit within
/// 1e-13..1e-5 of alpha = 1, where alpha alone cannot hold the precision, so
/// (1 - alpha) is the primary value and both components are kept, each
/// computed by its numerically favorable route.
class AlphaEstimate {
 public:
  static AlphaEstimate from_alpha(double alpha,
                                  AlphaSource source = AlphaSource::Assumed);
  static AlphaEstimate from_one_minus_alpha(
      double one_minus_alpha, AlphaSource source = AlphaSource::Assumed);

  /// Accepts independently computed components. They must agree with
  /// alpha + one_minus_alpha = 1 to within 1e-12; operations in this library
  /// produce pairs consistent to a few machine epsilons.
  static AlphaEstimate from_components(double alpha, double one_minus_alpha,
                                       AlphaSource source);

  double alpha() const noexcept { return alpha_; }
  double one_minus_alpha() const noexcept { return one_minus_alpha_; }
  AlphaSource source() const noexcept { return source_; }

 private:
  AlphaEstimate(double alpha, double one_minus_alpha, AlphaSource source)
      : alpha_(alpha), one_minus_alpha_(one_minus_alpha), source_(source) {}

  double alpha_;
  double one_minus_alpha_;
  AlphaSource source_;
};

/// A homogeneous machine: n identical units of p_single flop/s each.
struct SystemConfig {
  std::uint64_t n;
  double p_single;
  double clock_hz;

  explicit SystemConfig(std::uint64_t n_units, double p_single_flops,
                        double clock = 1.0e9);

  double nominal_performance() const noexcept {
    return static_cast<double>(n) * p_single;
  }
};

/// Sources of sequential time that add up to a total (1 - alpha).
enum class ContributionLabel { Net, Compute, Os, Sw, Addressing, Propagation, Other };

/// Named (1 - alpha) contributions. Each label appears at most once and the
/// running total stays strictly below 1.
class ContributionSet {
 public:
  void add(ContributionLabel label, double one_minus_alpha);
  double total_one_minus_alpha() const noexcept;
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<std::pair<ContributionLabel, double>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<ContributionLabel, double>> entries_;
};

/// Unvalidated efficiency kernel: 1 / (1 + (n - 1) * (1 - alpha)).
/// Shared by the scalar API and the grid/sweep kernels so that both produce
/// bit-identical values. Accepts one_minus_alpha > 1 (effective overhead
/// models); the denominator stays >= 1 for one_minus_alpha >= 0.
inline double efficiency_from_one_minus_alpha(double one_minus_alpha,
                                              std::uint64_t n) noexcept {
  return 1.0 / (1.0 + static_cast<double>(n - 1) * one_minus_alpha);
}

/// Speedup over one unit: n / (n * (1 - alpha) + alpha), in [1, n].
double speedup(const AlphaEstimate& alpha, std::uint64_t n);

/// Inverts speedup: alpha = (n / (n - 1)) * ((s - 1) / s).
/// Throws DegenerateInstanceError for n < 2, InconsistentMeasurementError for
/// s outside [1, n] (beyond rounding slack).
AlphaEstimate alpha_from_speedup(double s, std::uint64_t n);

/// Efficiency: speedup / n = 1 / (n * (1 - alpha) + alpha), in (0, 1].
double efficiency(const AlphaEstimate& alpha, std::uint64_t n);

/// Inverts efficiency: alpha = (e * n - 1) / (e * (n - 1)).
/// Throws DegenerateInstanceError for n < 2, InconsistentMeasurementError for
/// e outside [1/n, 1] (beyond rounding slack).
AlphaEstimate alpha_from_efficiency(double e, std::uint64_t n);

/// Payload performance: n * p_single / (n * (1 - alpha) + alpha),
/// identically efficiency(alpha, n) * n * p_single.
double payload_performance(const SystemConfig& cfg, const AlphaEstimate& alpha);

/// Payload performance with (1 - alpha) split into named contributions.
/// Equals payload_performance with alpha_total = 1 - sum of contributions.
double payload_performance_split(const SystemConfig& cfg,
                                 const ContributionSet& contributions);

/// Large-n payload plateau p_single / (1 - alpha); +infinity at alpha = 1.
double saturation_limit(const AlphaEstimate& alpha, double p_single);

const char* to_string(AlphaSource source) noexcept;
const char* to_string(ContributionLabel label) noexcept;

}  // namespace amdahl
