#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amdahl/ingest.hpp"
#include "amdahl/looping.hpp"
#include "amdahl/model.hpp"

namespace amdahl {

/// FirstOrder keeps (1 - alpha) constant in n. SecondOrder grows it by the
/// looping increment g(n), which bends the payload curve back down and
/// creates a finite optimum unit count.
enum class CurveOrder { FirstOrder, SecondOrder };

struct CurvePoint {
  std::uint64_t n;
  double nominal;     // n * p_single
  double payload;
  double efficiency;  // payload / nominal
};

struct PredictionCurve {
  AlphaEstimate basis;
  double p_single;
  CurveOrder order;
  LoopingSpec looping;
  std::vector<CurvePoint> points;
};

/// Grid of efficiency values over unit counts and sequential fractions,
/// row-major: values[i * one_minus_alpha_axis.size() + j].
struct SurfaceGrid {
  std::vector<std::uint64_t> n_axis;
  std::vector<double> one_minus_alpha_axis;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const {
    return values[i * one_minus_alpha_axis.size() + j];
  }
};

/// Payload performance across unit counts. n_range must be non-empty and
/// strictly ascending. FirstOrder points equal payload_performance exactly.
PredictionCurve curve(const AlphaEstimate& basis, double p_single,
                      std::span<const std::uint64_t> n_range, CurveOrder order,
                      const LoopingSpec& looping = {});

/// Efficiency surface. Cells are independent; this variant fans out with
/// OpenMP. Each cell equals efficiency(alpha, n) for its coordinates.
SurfaceGrid surface(std::span<const std::uint64_t> n_axis,
                    std::span<const double> one_minus_alpha_axis);

/// Serial reference for surface; produces bit-identical results.
SurfaceGrid surface_serial(std::span<const std::uint64_t> n_axis,
                           std::span<const double> one_minus_alpha_axis);

/// Efficiency ratio of two workloads on the same machine at unit count n.
double gain_ratio(const AlphaEstimate& alpha_hpl, const AlphaEstimate& alpha_hpcg,
                  std::uint64_t n);

/// Reported full- vs sparse-workload efficiency ratios cluster in [200, 500].
bool in_reported_hpl_hpcg_band(double ratio) noexcept;

struct ValidationReport {
  std::string name;
  Epoch prior_epoch;
  Epoch later_epoch;
  double predicted_rmax = 0.0;
  double measured_rmax = 0.0;
  double relative_error = 0.0;  // (predicted - measured) / measured
  double prior_p_single = 0.0;
  double later_p_single = 0.0;
  /// Per-unit performance changed between stages; the constant-alpha
  /// extrapolation is then only indicative.
  bool p_single_changed = false;
  std::vector<std::string> warnings;
};

/// Predicts the later stage's r_max from the prior stage's alpha at the later
/// unit count and per-unit peak, and compares against the measured value.
/// The prior record must carry an alpha and the later stage >= 2 cores.
ValidationReport validate_successor(const DerivedRecord& prior,
                                    const SystemSnapshot& later);

/// Log-spaced unit counts, strictly ascending after rounding.
std::vector<std::uint64_t> log_space_counts(std::uint64_t lo, std::uint64_t hi,
                                            std::size_t points);

/// Log-spaced positive reals.
std::vector<double> log_space(double lo, double hi, std::size_t points);

const char* to_string(CurveOrder order) noexcept;

}  // namespace amdahl
