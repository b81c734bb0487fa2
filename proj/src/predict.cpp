#include "amdahl/predict.hpp"

#include <cmath>
#include <stdexcept>

namespace amdahl {

namespace {

void check_ascending_counts(std::span<const std::uint64_t> values,
                            const char* what) {
  if (values.empty()) {
    throw std::invalid_argument(std::string(what) + " must not be empty");
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] >= values[i + 1]) {
      throw std::invalid_argument(std::string(what) +
                                  " must be strictly ascending");
    }
  }
  if (values.front() == 0) {
    throw std::invalid_argument(std::string(what) + " must start at 1 or more");
  }
}

}  // namespace

PredictionCurve curve(const AlphaEstimate& basis, double p_single,
                      std::span<const std::uint64_t> n_range, CurveOrder order,
                      const LoopingSpec& looping) {
  check_ascending_counts(n_range, "the unit-count range");
  if (!(p_single > 0.0) || !std::isfinite(p_single)) {
    throw std::invalid_argument("per-unit performance must be positive");
  }
  PredictionCurve result{basis, p_single, order, looping, {}};
  result.points.reserve(n_range.size());
  for (std::uint64_t n : n_range) {
    CurvePoint point;
    point.n = n;
    point.nominal = static_cast<double>(n) * p_single;
    if (order == CurveOrder::FirstOrder) {
      point.efficiency = efficiency_from_one_minus_alpha(basis.one_minus_alpha(), n);
    } else {
      // The sequential fraction grows with n; past the optimum it outgrows
      // the added units and payload performance falls again.
      const double effective =
          basis.one_minus_alpha() + overhead_increment(looping, n);
      point.efficiency = efficiency_from_one_minus_alpha(effective, n);
    }
    point.payload = point.efficiency * static_cast<double>(n) * p_single;
    result.points.push_back(point);
  }
  return result;
}

SurfaceGrid surface_serial(std::span<const std::uint64_t> n_axis,
                           std::span<const double> one_minus_alpha_axis) {
  check_ascending_counts(n_axis, "the unit-count axis");
  if (one_minus_alpha_axis.empty()) {
    throw std::invalid_argument("the sequential-fraction axis must not be empty");
  }
  for (double oma : one_minus_alpha_axis) {
    if (!std::isfinite(oma) || oma < 0.0 || oma > 1.0) {
      throw std::invalid_argument("sequential fractions must lie in [0, 1]");
    }
  }
  SurfaceGrid grid;
  grid.n_axis.assign(n_axis.begin(), n_axis.end());
  grid.one_minus_alpha_axis.assign(one_minus_alpha_axis.begin(),
                                   one_minus_alpha_axis.end());
  grid.values.resize(n_axis.size() * one_minus_alpha_axis.size());
  const std::size_t width = one_minus_alpha_axis.size();
  for (std::size_t i = 0; i < n_axis.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      grid.values[i * width + j] =
          efficiency_from_one_minus_alpha(one_minus_alpha_axis[j], n_axis[i]);
    }
  }
  return grid;
}

SurfaceGrid surface(std::span<const std::uint64_t> n_axis,
                    std::span<const double> one_minus_alpha_axis) {
  check_ascending_counts(n_axis, "the unit-count axis");
  if (one_minus_alpha_axis.empty()) {
    throw std::invalid_argument("the sequential-fraction axis must not be empty");
  }
  for (double oma : one_minus_alpha_axis) {
    if (!std::isfinite(oma) || oma < 0.0 || oma > 1.0) {
      throw std::invalid_argument("sequential fractions must lie in [0, 1]");
    }
  }
  SurfaceGrid grid;
  grid.n_axis.assign(n_axis.begin(), n_axis.end());
  grid.one_minus_alpha_axis.assign(one_minus_alpha_axis.begin(),
                                   one_minus_alpha_axis.end());
  grid.values.resize(n_axis.size() * one_minus_alpha_axis.size());
  const std::int64_t rows = static_cast<std::int64_t>(n_axis.size());
  const std::int64_t cols = static_cast<std::int64_t>(one_minus_alpha_axis.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      grid.values[static_cast<std::size_t>(i * cols + j)] =
          efficiency_from_one_minus_alpha(
              one_minus_alpha_axis[static_cast<std::size_t>(j)],
              n_axis[static_cast<std::size_t>(i)]);
    }
  }
  return grid;
}

double gain_ratio(const AlphaEstimate& alpha_hpl, const AlphaEstimate& alpha_hpcg,
                  std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("unit count must be at least 1");
  return efficiency(alpha_hpl, n) / efficiency(alpha_hpcg, n);
}

bool in_reported_hpl_hpcg_band(double ratio) noexcept {
  return ratio >= 200.0 && ratio <= 500.0;
}

ValidationReport validate_successor(const DerivedRecord& prior,
                                    const SystemSnapshot& later) {
  if (!prior.alpha) {
    throw std::invalid_argument(
        "the prior record carries no alpha (degenerate core count)");
  }
  if (later.cores_used < 2) {
    throw std::invalid_argument("the later stage needs at least two cores");
  }
  ValidationReport report;
  report.name = later.name;
  report.prior_epoch = prior.snapshot.epoch;
  report.later_epoch = later.epoch;
  report.prior_p_single = prior.snapshot.rpeak_flops /
                          static_cast<double>(prior.snapshot.cores_used);
  report.later_p_single =
      later.rpeak_flops / static_cast<double>(later.cores_used);
  if (prior.snapshot.name != later.name) {
    report.warnings.push_back("records name different machines: '" +
                              prior.snapshot.name + "' and '" + later.name + "'");
  }
  if (!(later.epoch > prior.snapshot.epoch) &&
      !(later.epoch == prior.snapshot.epoch)) {
    report.warnings.push_back("the later stage predates the prior one");
  }
  const double drift =
      std::fabs(report.later_p_single - report.prior_p_single) /
      report.prior_p_single;
  if (drift > 1e-3) {
    report.p_single_changed = true;
    report.warnings.push_back(
        "per-unit peak changed between stages; a constant-alpha projection "
        "cannot separate scaling effects from hardware changes");
  }
  const SystemConfig cfg(later.cores_used, report.later_p_single);
  report.predicted_rmax = payload_performance(cfg, *prior.alpha);
  report.measured_rmax = later.rmax_flops;
  report.relative_error =
      (report.predicted_rmax - report.measured_rmax) / report.measured_rmax;
  return report;
}

std::vector<std::uint64_t> log_space_counts(std::uint64_t lo, std::uint64_t hi,
                                            std::size_t points) {
  if (lo == 0 || hi < lo) {
    throw std::invalid_argument("log spacing needs 1 <= lo <= hi");
  }
  if (points == 0) throw std::invalid_argument("log spacing needs at least one point");
  if (points == 1 || lo == hi) return {lo};
  std::vector<std::uint64_t> values;
  values.reserve(points);
  const double log_lo = std::log(static_cast<double>(lo));
  const double log_hi = std::log(static_cast<double>(hi));
  std::uint64_t previous = 0;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    const double x = std::exp(log_lo + t * (log_hi - log_lo));
    std::uint64_t v = static_cast<std::uint64_t>(std::llround(x));
    if (v <= previous) v = previous + 1;  // keep strictly ascending
    if (v > hi) v = hi;
    if (v <= previous) break;  // axis saturated at hi
    values.push_back(v);
    previous = v;
  }
  if (values.size() == points && values.back() < hi) values.back() = hi;
  return values;
}

std::vector<double> log_space(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("log spacing needs 0 < lo <= hi");
  }
  if (points == 0) throw std::invalid_argument("log spacing needs at least one point");
  if (points == 1 || lo == hi) return {lo};
  std::vector<double> values;
  values.reserve(points);
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    values.push_back(std::exp(log_lo + t * (log_hi - log_lo)));
  }
  values.front() = lo;
  values.back() = hi;
  return values;
}

const char* to_string(CurveOrder order) noexcept {
  switch (order) {
    case CurveOrder::FirstOrder: return "first_order";
    case CurveOrder::SecondOrder: return "second_order";
  }
  return "first_order";
}

}  // namespace amdahl
