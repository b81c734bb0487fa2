#include "amdahl/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace amdahl {

namespace {

// Slack for values that arrive through rounded measurements: a correctly
// rounded efficiency of an alpha = 0 system can land a few ulps below 1/n.
// Violations within the slack clamp to the boundary instead of throwing.
constexpr double kMeasurementSlack = 1e-9;
constexpr double kComponentSlack = 1e-12;

double clamp01(double x) noexcept {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace

AlphaEstimate AlphaEstimate::from_alpha(double alpha, AlphaSource source) {
  if (std::isnan(alpha) || alpha < -kComponentSlack || alpha > 1.0 + kComponentSlack) {
    throw std::invalid_argument("alpha must lie in [0, 1], got " +
                                std::to_string(alpha));
  }
  const double a = clamp01(alpha);
  return AlphaEstimate(a, 1.0 - a, source);
}

AlphaEstimate AlphaEstimate::from_one_minus_alpha(double one_minus_alpha,
                                                  AlphaSource source) {
  if (std::isnan(one_minus_alpha) || one_minus_alpha < -kComponentSlack ||
      one_minus_alpha > 1.0 + kComponentSlack) {
    throw std::invalid_argument("1 - alpha must lie in [0, 1], got " +
                                std::to_string(one_minus_alpha));
  }
  const double oma = clamp01(one_minus_alpha);
  return AlphaEstimate(1.0 - oma, oma, source);
}

AlphaEstimate AlphaEstimate::from_components(double alpha, double one_minus_alpha,
                                             AlphaSource source) {
  if (std::isnan(alpha) || std::isnan(one_minus_alpha)) {
    throw std::invalid_argument("alpha components must be numbers");
  }
  const double a = clamp01(alpha);
  const double oma = clamp01(one_minus_alpha);
  if (std::fabs(a + oma - 1.0) > kComponentSlack) {
    throw std::invalid_argument("alpha components disagree: alpha=" +
                                std::to_string(alpha) + ", 1-alpha=" +
                                std::to_string(one_minus_alpha));
  }
  return AlphaEstimate(a, oma, source);
}

SystemConfig::SystemConfig(std::uint64_t n_units, double p_single_flops, double clock)
    : n(n_units), p_single(p_single_flops), clock_hz(clock) {
  if (n == 0) throw std::invalid_argument("a system needs at least one unit");
  if (!(p_single > 0.0) || !std::isfinite(p_single)) {
    throw std::invalid_argument("per-unit performance must be positive");
  }
  if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) {
    throw std::invalid_argument("clock rate must be positive");
  }
}

void ContributionSet::add(ContributionLabel label, double one_minus_alpha) {
  if (std::isnan(one_minus_alpha) || one_minus_alpha < 0.0) {
    throw std::invalid_argument("a sequential contribution cannot be negative");
  }
  for (const auto& [existing, unused] : entries_) {
    if (existing == label) {
      throw std::invalid_argument(std::string("duplicate contribution label ") +
                                  to_string(label));
    }
  }
  if (total_one_minus_alpha() + one_minus_alpha >= 1.0) {
    throw OverSubscribedContributionsError(
        "sequential contributions add up to 1 or more; no parallel fraction left");
  }
  entries_.emplace_back(label, one_minus_alpha);
}

double ContributionSet::total_one_minus_alpha() const noexcept {
  double total = 0.0;
  for (const auto& [label, oma] : entries_) total += oma;
  return total;
}

double efficiency(const AlphaEstimate& alpha, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("unit count must be at least 1");
  return efficiency_from_one_minus_alpha(alpha.one_minus_alpha(), n);
}

double speedup(const AlphaEstimate& alpha, std::uint64_t n) {
  return static_cast<double>(n) * efficiency(alpha, n);
}

AlphaEstimate alpha_from_efficiency(double e, std::uint64_t n) {
  if (n < 2) {
    throw DegenerateInstanceError(
        "the parallel fraction is undefined for fewer than two units");
  }
  const double nd = static_cast<double>(n);
  if (!std::isfinite(e) || !(e > 0.0) || e > 1.0 + kComponentSlack) {
    throw InconsistentMeasurementError("efficiency must lie in (0, 1], got " +
                                       std::to_string(e));
  }
  if (e * nd < 1.0 - kMeasurementSlack) {
    throw InconsistentMeasurementError(
        "efficiency below 1/n is impossible for any alpha: e=" +
        std::to_string(e) + ", n=" + std::to_string(n));
  }
  const double den = e * static_cast<double>(n - 1);
  // fma keeps e*n - 1 to one rounding; the subtraction otherwise cancels
  // catastrophically for alpha near 0.
  const double a = std::fma(e, nd, -1.0) / den;
  const double oma = (1.0 - e) / den;
  return AlphaEstimate::from_components(clamp01(a), clamp01(oma),
                                        AlphaSource::FromEfficiency);
}

AlphaEstimate alpha_from_speedup(double s, std::uint64_t n) {
  if (n < 2) {
    throw DegenerateInstanceError(
        "the parallel fraction is undefined for fewer than two units");
  }
  const double nd = static_cast<double>(n);
  if (!std::isfinite(s) || s < 1.0 - kMeasurementSlack ||
      s > nd * (1.0 + kComponentSlack)) {
    throw InconsistentMeasurementError("speedup must lie in [1, n], got s=" +
                                       std::to_string(s) + ", n=" +
                                       std::to_string(n));
  }
  const double den = static_cast<double>(n - 1) * s;
  const double a = nd * (s - 1.0) / den;
  // (n - s) / ((n - 1) s) is the cancellation-free route to 1 - alpha.
  const double oma = (nd - s) / den;
  return AlphaEstimate::from_components(clamp01(a), clamp01(oma),
                                        AlphaSource::FromSpeedup);
}

double payload_performance(const SystemConfig& cfg, const AlphaEstimate& alpha) {
  return efficiency(alpha, cfg.n) * static_cast<double>(cfg.n) * cfg.p_single;
}

double payload_performance_split(const SystemConfig& cfg,
                                 const ContributionSet& contributions) {
  const double total = contributions.total_one_minus_alpha();
  if (total >= 1.0) {
    throw OverSubscribedContributionsError(
        "sequential contributions add up to 1 or more; no parallel fraction left");
  }
  const auto alpha =
      AlphaEstimate::from_one_minus_alpha(total, AlphaSource::FromContributions);
  return payload_performance(cfg, alpha);
}

double saturation_limit(const AlphaEstimate& alpha, double p_single) {
  if (!(p_single > 0.0) || !std::isfinite(p_single)) {
    throw std::invalid_argument("per-unit performance must be positive");
  }
  const double oma = alpha.one_minus_alpha();
  if (oma == 0.0) return std::numeric_limits<double>::infinity();
  return p_single / oma;
}

const char* to_string(AlphaSource source) noexcept {
  switch (source) {
    case AlphaSource::FromEfficiency: return "from_efficiency";
    case AlphaSource::FromSpeedup: return "from_speedup";
    case AlphaSource::FromContributions: return "from_contributions";
    case AlphaSource::Assumed: return "assumed";
  }
  return "assumed";
}

const char* to_string(ContributionLabel label) noexcept {
  switch (label) {
    case ContributionLabel::Net: return "net";
    case ContributionLabel::Compute: return "compute";
    case ContributionLabel::Os: return "os";
    case ContributionLabel::Sw: return "sw";
    case ContributionLabel::Addressing: return "addressing";
    case ContributionLabel::Propagation: return "propagation";
    case ContributionLabel::Other: return "other";
  }
  return "other";
}

}  // namespace amdahl
