#pragma once

#include <cmath>
#include <cstdint>

namespace amdahl {

/// How per-unit coordination cost grows with the unit count.
enum class LoopingForm { Constant, LinearInN, LogInN };

struct LoopingSpec {
  LoopingForm form = LoopingForm::Constant;
  double lambda = 0.0;
};

/// Multiplier on the per-worker dispatch cost:
/// 1, 1 + lambda * n, or 1 + lambda * log2(n).
inline double dispatch_multiplier(const LoopingSpec& spec, std::uint64_t n) noexcept {
  switch (spec.form) {
    case LoopingForm::LinearInN:
      return 1.0 + spec.lambda * static_cast<double>(n);
    case LoopingForm::LogInN:
      return 1.0 + spec.lambda * std::log2(static_cast<double>(n));
    case LoopingForm::Constant:
    default:
      return 1.0;
  }
}

/// Additive growth term g(n) on the sequential fraction:
/// lambda, lambda * n, or lambda * log2(n).
inline double overhead_increment(const LoopingSpec& spec, std::uint64_t n) noexcept {
  switch (spec.form) {
    case LoopingForm::LinearInN:
      return spec.lambda * static_cast<double>(n);
    case LoopingForm::LogInN:
      return spec.lambda * std::log2(static_cast<double>(n));
    case LoopingForm::Constant:
    default:
      return spec.lambda;
  }
}

const char* to_string(LoopingForm form) noexcept;

}  // namespace amdahl
