#include "amdahl/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace amdahl {

namespace {

std::uint64_t ceil_cycles(double x) {
  return static_cast<std::uint64_t>(std::ceil(x));
}

void check_ascending(std::span<const std::uint64_t> n_values) {
  if (n_values.empty()) {
    throw std::invalid_argument("a sweep needs at least one unit count");
  }
  for (std::size_t i = 0; i + 1 < n_values.size(); ++i) {
    if (n_values[i] >= n_values[i + 1]) {
      throw std::invalid_argument("sweep unit counts must be strictly ascending");
    }
  }
}

}  // namespace

std::uint64_t single_unit_reference_cycles(const SimConfig& cfg) {
  return cfg.n * cfg.payload_cycles * cfg.iterations +
         cfg.iterations * cfg.per_iteration_seq_cycles;
}

SimOutcome simulate(const SimConfig& cfg) {
  if (cfg.n == 0) throw std::invalid_argument("unit count must be at least 1");

  // Dispatch is back-to-back at the coordinator; worker i starts when its own
  // slot ends, so the phase spans n * d_eff cycles, rounded up once. Rounding
  // at the phase boundary keeps sub-cycle looping growth (lambda * n) smooth.
  const double mult = dispatch_multiplier(cfg.looping, cfg.n);
  const std::uint64_t dispatch_phase =
      ceil_cycles(static_cast<double>(cfg.n) *
                  static_cast<double>(cfg.dispatch_cycles) * mult);
  const std::uint64_t join_phase = cfg.n * cfg.join_cycles;

  std::uint64_t wall_iter = dispatch_phase + cfg.payload_cycles + join_phase +
                            cfg.per_iteration_seq_cycles;
  if (wall_iter < cfg.period_floor_cycles) wall_iter = cfg.period_floor_cycles;

  SimOutcome out;
  out.total_cycles = cfg.iterations * wall_iter;
  out.payload_cycles_total = cfg.n * cfg.payload_cycles * cfg.iterations;
  out.overhead_cycles_total =
      cfg.iterations * (dispatch_phase + join_phase + cfg.per_iteration_seq_cycles);
  const std::uint64_t occupancy = cfg.n * out.total_cycles;
  out.idle_cycles_total =
      occupancy - out.payload_cycles_total - out.overhead_cycles_total;

  const std::uint64_t reference = single_unit_reference_cycles(cfg);
  if (out.total_cycles == 0) {
    out.speedup = 1.0;
    out.payload_fraction = 0.0;
    out.idle_fraction = 0.0;
    return out;
  }
  out.speedup = static_cast<double>(reference) / static_cast<double>(out.total_cycles);
  out.payload_fraction = static_cast<double>(out.payload_cycles_total) /
                         static_cast<double>(occupancy);
  out.idle_fraction = static_cast<double>(out.idle_cycles_total) /
                      static_cast<double>(occupancy);
  if (cfg.n >= 2 && out.speedup >= 1.0) {
    out.alpha_eff = alpha_from_speedup(out.speedup, cfg.n);
  }
  return out;
}

std::vector<std::pair<std::uint64_t, SimOutcome>> sweep_n_serial(
    const SimConfig& base, std::span<const std::uint64_t> n_values) {
  check_ascending(n_values);
  std::vector<std::pair<std::uint64_t, SimOutcome>> results(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    SimConfig cfg = base;
    cfg.n = n_values[i];
    results[i] = {n_values[i], simulate(cfg)};
  }
  return results;
}

std::vector<std::pair<std::uint64_t, SimOutcome>> sweep_n(
    const SimConfig& base, std::span<const std::uint64_t> n_values) {
  check_ascending(n_values);
  std::vector<std::pair<std::uint64_t, SimOutcome>> results(n_values.size());
  const std::int64_t count = static_cast<std::int64_t>(n_values.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    SimConfig cfg = base;
    cfg.n = n_values[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = {cfg.n, simulate(cfg)};
  }
  return results;
}

SimConfig hpl_preset(std::uint64_t n) {
  SimConfig cfg;
  cfg.n = n;
  cfg.dispatch_cycles = 1;
  cfg.join_cycles = 1;
  cfg.payload_cycles = 1000000;
  cfg.iterations = 1;
  return cfg;
}

SimConfig hpcg_preset(std::uint64_t n) {
  SimConfig cfg;
  cfg.n = n;
  cfg.dispatch_cycles = 1;
  cfg.join_cycles = 1;
  cfg.payload_cycles = 20000;
  cfg.iterations = 50;
  cfg.per_iteration_seq_cycles = 5000;
  return cfg;
}

SimConfig brain_preset(std::uint64_t n) {
  SimConfig cfg;
  cfg.n = n;
  cfg.dispatch_cycles = 1;
  cfg.join_cycles = 1;
  cfg.payload_cycles = 1000;
  cfg.iterations = 100;
  // 1 ms sensory-motor period at a 1 GHz clock; iterations cannot start early.
  cfg.period_floor_cycles = 1000000;
  return cfg;
}

const char* to_string(LoopingForm form) noexcept {
  switch (form) {
    case LoopingForm::LinearInN:
      return "linear";
    case LoopingForm::LogInN:
      return "log";
    case LoopingForm::Constant:
    default:
      return "constant";
  }
}

}  // namespace amdahl
