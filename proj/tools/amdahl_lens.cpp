// amdahl-lens: command-line front end over the amdahl library.
//
// Every subcommand writes one Report — {command, inputs_digest, results,
// warnings} — as JSON (default) or CSV, to stdout or --out PATH. Reports are
// deterministic: identical inputs and flags produce byte-identical output.
//
// Exit codes: 0 success, 2 usage error, 3 data or model infeasibility,
// 4 I/O error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "amdahl/bounds.hpp"
#include "amdahl/errors.hpp"
#include "amdahl/format.hpp"
#include "amdahl/ingest.hpp"
#include "amdahl/looping.hpp"
#include "amdahl/model.hpp"
#include "amdahl/precision.hpp"
#include "amdahl/predict.hpp"
#include "amdahl/simulator.hpp"

namespace {

using namespace amdahl;

// --------------------------------------------------------------------------
// Report plumbing
// --------------------------------------------------------------------------

struct Cell {
  enum class Kind { Number, Integer, Text, Boolean, Null };
  Kind kind = Kind::Null;
  double number = 0.0;
  std::uint64_t integer = 0;
  std::string text;
  bool boolean = false;
};

Cell num_cell(double x) {
  Cell c;
  c.kind = Cell::Kind::Number;
  c.number = x;
  return c;
}

Cell int_cell(std::uint64_t v) {
  Cell c;
  c.kind = Cell::Kind::Integer;
  c.integer = v;
  return c;
}

Cell text_cell(std::string s) {
  Cell c;
  c.kind = Cell::Kind::Text;
  c.text = std::move(s);
  return c;
}

Cell bool_cell(bool b) {
  Cell c;
  c.kind = Cell::Kind::Boolean;
  c.boolean = b;
  return c;
}

Cell null_cell() { return Cell{}; }

/// Results shaped as a table: named columns plus rows of cells. A table
/// flagged `object` holds exactly one row and serializes as a JSON object;
/// otherwise results serialize as a JSON array of per-row objects. CSV output
/// is always one header row plus one line per row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool object = false;
};

struct ReportMeta {
  std::string command;
  std::string digest;
  std::vector<std::string> warnings;
};

void emit_cell_json(JsonWriter& w, const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Number: w.value_number(c.number); break;
    case Cell::Kind::Integer: w.value_integer(c.integer); break;
    case Cell::Kind::Text: w.value_string(c.text); break;
    case Cell::Kind::Boolean: w.value_bool(c.boolean); break;
    case Cell::Kind::Null: w.value_null(); break;
  }
}

std::string cell_csv_text(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Number: return format_number(c.number);
    case Cell::Kind::Integer: return std::to_string(c.integer);
    case Cell::Kind::Text: return c.text;
    case Cell::Kind::Boolean: return c.boolean ? "true" : "false";
    case Cell::Kind::Null: return "";
  }
  return "";
}

std::string render_json(const ReportMeta& meta, const Table& t) {
  JsonWriter w;
  w.begin_object();
  w.key("command").value_string(meta.command);
  w.key("inputs_digest").value_string(meta.digest);
  w.key("results");
  if (t.object) {
    w.begin_object();
    if (!t.rows.empty()) {
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        w.key(t.columns[i]);
        emit_cell_json(w, t.rows.front()[i]);
      }
    }
    w.end_object();
  } else {
    w.begin_array();
    for (const auto& row : t.rows) {
      w.begin_object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        w.key(t.columns[i]);
        emit_cell_json(w, row[i]);
      }
      w.end_object();
    }
    w.end_array();
  }
  w.key("warnings").begin_array();
  for (const auto& warning : meta.warnings) w.value_string(warning);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string render_csv(const ReportMeta& meta, const Table& t) {
  std::string out;
  out += "# command: " + meta.command + "\n";
  out += "# inputs_digest: " + meta.digest + "\n";
  for (const auto& warning : meta.warnings) out += "# warning: " + warning + "\n";
  out += csv_row(t.columns);
  std::vector<std::string> cells(t.columns.size());
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) cells[i] = cell_csv_text(row[i]);
    out += csv_row(cells);
  }
  return out;
}

/// Canonical flat rendering of the resolved inputs, hashed into the report so
/// downstream consumers can tell whether two reports came from the same run
/// configuration.
class DigestBuilder {
 public:
  explicit DigestBuilder(std::string_view command) : data_(command) {}

  DigestBuilder& field(std::string_view key, std::string_view value) {
    data_ += '\n';
    data_ += key;
    data_ += '=';
    data_ += value;
    return *this;
  }

  DigestBuilder& number(std::string_view key, double value) {
    return field(key, format_number(value));
  }

  DigestBuilder& integer(std::string_view key, std::uint64_t value) {
    return field(key, std::to_string(value));
  }

  std::string hex() const { return "fnv1a-64:" + fnv1a_hex(data_); }

 private:
  std::string data_;
};

// --------------------------------------------------------------------------
// I/O helpers
// --------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read input file: " + path);
  return buffer.str();
}

void write_output(const std::string& path, std::string_view text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("cannot write output file: " + path);
}

void emit(const std::string& format, const std::string& out_path,
          const ReportMeta& meta, const Table& t) {
  write_output(out_path, format == "csv" ? render_csv(meta, t)
                                         : render_json(meta, t));
}

// --------------------------------------------------------------------------
// Shared option plumbing
// --------------------------------------------------------------------------

struct CommonOpts {
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->transform(CLI::IsMember({"json", "csv"}))
      ->default_str("json");
  cmd->add_option("--out", common.out,
                  "Write the report to this file instead of stdout");
}

LoopingForm parse_looping(const std::string& text) {
  if (text == "linear") return LoopingForm::LinearInN;
  if (text == "log") return LoopingForm::LogInN;
  return LoopingForm::Constant;
}

// --------------------------------------------------------------------------
// alpha
// --------------------------------------------------------------------------

struct AlphaOpts {
  CommonOpts common;
  double efficiency = 0.0;
  double rmax = 0.0;
  double rpeak = 0.0;
  std::uint64_t cores = 0;
  CLI::Option* efficiency_opt = nullptr;
  CLI::Option* rmax_opt = nullptr;
  CLI::Option* rpeak_opt = nullptr;
};

void run_alpha(const AlphaOpts& o) {
  const bool has_eff = o.efficiency_opt->count() > 0;
  const bool has_rmax = o.rmax_opt->count() > 0;
  const bool has_rpeak = o.rpeak_opt->count() > 0;
  if (has_eff == (has_rmax || has_rpeak) || has_rmax != has_rpeak) {
    throw CLI::ValidationError(
        "alpha", "pass either --efficiency or both --rmax and --rpeak");
  }

  DigestBuilder digest("alpha");
  double eff = o.efficiency;
  if (has_rmax) {
    if (!(o.rpeak > 0.0) || !(o.rmax > 0.0)) {
      throw InconsistentMeasurementError(
          "rmax and rpeak must both be positive");
    }
    eff = o.rmax / o.rpeak;
    digest.number("rmax", o.rmax).number("rpeak", o.rpeak);
  } else {
    digest.number("efficiency", o.efficiency);
  }
  digest.integer("cores", o.cores);

  const AlphaEstimate estimate = alpha_from_efficiency(eff, o.cores);
  const double oma = estimate.one_minus_alpha();
  const double max_gain =
      oma > 0.0 ? 1.0 / oma : std::numeric_limits<double>::infinity();

  ReportMeta meta{"alpha", digest.hex(), {}};
  if (oma == 0.0) {
    meta.warnings.push_back(
        "sequential fraction is zero; the gain limit is unbounded");
  }

  Table t;
  t.object = true;
  t.columns = {"efficiency", "cores",    "alpha",
               "one_minus_alpha", "max_gain", "speedup"};
  t.rows.push_back({num_cell(eff), int_cell(o.cores), num_cell(estimate.alpha()),
                    num_cell(oma), num_cell(max_gain),
                    num_cell(eff * static_cast<double>(o.cores))});
  emit(o.common.format, o.common.out, meta, t);
}

// --------------------------------------------------------------------------
// bounds
// --------------------------------------------------------------------------

struct BoundsOpts {
  CommonOpts common;
  std::string kind;
  double window_seconds = 13298.0;
  double clock_hz = 1.45e9;
  double distance_m = 100.0;
  std::uint64_t context_switch_cycles = kTypicalContextSwitchCycles;
  std::uint64_t units = 0;
  double cluster_factor = 1.0;
  double access_factor = 1.0;
  CLI::Option* units_opt = nullptr;
};

void run_bounds(const BoundsOpts& o) {
  const MeasurementWindow window{o.window_seconds, o.clock_hz};

  BoundResult result{};
  DigestBuilder digest("bounds");
  digest.field("kind", o.kind)
      .number("window_seconds", o.window_seconds)
      .number("clock_hz", o.clock_hz);

  if (o.kind == "clock-quantum") {
    result = clock_quantum_bound(window);
  } else if (o.kind == "propagation") {
    result = propagation_bound(o.distance_m, window);
    digest.number("distance_m", o.distance_m);
  } else if (o.kind == "os") {
    result = os_bound(o.context_switch_cycles, window);
    digest.integer("context_switch_cycles", o.context_switch_cycles);
  } else {
    if (o.units_opt->count() == 0) {
      throw CLI::ValidationError("bounds",
                                 "--kind addressing requires --units");
    }
    result = addressing_bound(o.units, o.cluster_factor, window);
    digest.integer("units", o.units).number("cluster_factor", o.cluster_factor);
  }
  if (o.access_factor != 1.0) {
    result = access_scaling(result, o.access_factor);
    digest.number("access_factor", o.access_factor);
  }

  ReportMeta meta{"bounds", digest.hex(), {}};
  Table t;
  t.object = true;
  t.columns = {"kind",
               "label",
               "window_seconds",
               "clock_hz",
               "window_cycles",
               "sequential_cycles",
               "one_minus_alpha_bound",
               "max_gain"};
  t.rows.push_back({text_cell(to_string(result.kind)),
                    text_cell(to_string(to_contribution_label(result.kind))),
                    num_cell(o.window_seconds), num_cell(o.clock_hz),
                    num_cell(result.window_cycles),
                    num_cell(result.sequential_cycles),
                    num_cell(result.one_minus_alpha_bound),
                    num_cell(result.max_gain)});
  emit(o.common.format, o.common.out, meta, t);
}

// --------------------------------------------------------------------------
// decompose
// --------------------------------------------------------------------------

struct DecomposeOpts {
  CommonOpts common;
  std::string model = "serial";
  double time64 = 0.0;
  double time16 = 0.0;
  double eff64 = 0.0;
  double eff16 = 0.0;
  std::uint64_t cores = 0;
  double perf_ratio = 0.0;
  double operand_ratio = 4.0;
  CLI::Option* time64_opt = nullptr;
  CLI::Option* time16_opt = nullptr;
  CLI::Option* eff64_opt = nullptr;
  CLI::Option* eff16_opt = nullptr;
  CLI::Option* cores_opt = nullptr;
  CLI::Option* perf_ratio_opt = nullptr;
};

void run_decompose(const DecomposeOpts& o) {
  const bool any_times =
      o.time64_opt->count() > 0 || o.time16_opt->count() > 0;
  const bool any_measurement =
      o.eff64_opt->count() > 0 || o.eff16_opt->count() > 0 ||
      o.cores_opt->count() > 0 || o.perf_ratio_opt->count() > 0;
  const bool times_route =
      o.time64_opt->count() > 0 && o.time16_opt->count() > 0;
  const bool measurement_route =
      o.eff64_opt->count() > 0 && o.eff16_opt->count() > 0 &&
      o.cores_opt->count() > 0 && o.perf_ratio_opt->count() > 0;
  if (times_route == measurement_route || (any_times && any_measurement)) {
    throw CLI::ValidationError(
        "decompose",
        "pass either --time64 and --time16, or all of --eff64 --eff16 "
        "--cores --perf-ratio");
  }

  DigestBuilder digest("decompose");
  digest.field("model", o.model).number("operand_ratio", o.operand_ratio);

  NormalizedTimes times{};
  if (times_route) {
    times.time64 = o.time64;
    times.time16 = o.time16;
    digest.number("time64", o.time64).number("time16", o.time16);
  } else {
    const DualPrecisionMeasurement m(o.eff64, o.eff16, o.cores, o.perf_ratio);
    times = times_from_measurement(m);
    digest.number("eff64", o.eff64)
        .number("eff16", o.eff16)
        .integer("cores", o.cores)
        .number("perf_ratio", o.perf_ratio);
  }

  const DecompositionResult d =
      o.model == "timeaware"
          ? decompose_timeaware(times.time16, times.time64, o.operand_ratio)
          : decompose_serial(times.time16, times.time64, o.operand_ratio);

  ReportMeta meta{"decompose", digest.hex(), {}};
  Table t;
  t.object = true;
  t.columns = {"model", "operand_ratio",        "time64", "time16",
               "f0",    "f16", "expected_perf_ratio"};
  t.rows.push_back({text_cell(to_string(d.model)), num_cell(d.operand_ratio),
                    num_cell(d.time64), num_cell(d.time16), num_cell(d.f0),
                    num_cell(d.f16), num_cell(expected_perf_ratio(d))});
  emit(o.common.format, o.common.out, meta, t);
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

struct SimulateOpts {
  CommonOpts common;
  std::uint64_t units = 1;
  std::uint64_t dispatch_cycles = 0;
  std::uint64_t join_cycles = 0;
  std::uint64_t payload_cycles = 0;
  std::uint64_t iterations = 1;
  std::uint64_t seq_cycles = 0;
  std::uint64_t floor_cycles = 0;
  std::string looping = "constant";
  double lambda = 0.0;
  std::string preset;
  std::string config_path;
  std::vector<std::uint64_t> sweep;
  CLI::Option* units_opt = nullptr;
  CLI::Option* dispatch_opt = nullptr;
  CLI::Option* join_opt = nullptr;
  CLI::Option* payload_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* seq_opt = nullptr;
  CLI::Option* floor_opt = nullptr;
  CLI::Option* looping_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* sweep_opt = nullptr;
};

std::uint64_t parse_config_u64(const std::string& value, std::size_t line,
                               std::size_t column) {
  std::uint64_t parsed = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, parsed);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("expected an unsigned integer, got '" + value + "'", line,
                     column);
  }
  return parsed;
}

double parse_config_double(const std::string& value, std::size_t line,
                           std::size_t column) {
  double parsed = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, parsed);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("expected a number, got '" + value + "'", line, column);
  }
  return parsed;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

/// Applies `key = value` lines (with '#' comments) onto cfg. Keys mirror the
/// command-line flags: units, dispatch_cycles, join_cycles, payload_cycles,
/// iterations, seq_cycles, floor_cycles, looping, lambda.
SimConfig apply_config_text(SimConfig cfg, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line must be key=value", line_no, 1);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::size_t value_col = eq + 2;
    if (key == "units") {
      cfg.n = parse_config_u64(value, line_no, value_col);
    } else if (key == "dispatch_cycles") {
      cfg.dispatch_cycles = parse_config_u64(value, line_no, value_col);
    } else if (key == "join_cycles") {
      cfg.join_cycles = parse_config_u64(value, line_no, value_col);
    } else if (key == "payload_cycles") {
      cfg.payload_cycles = parse_config_u64(value, line_no, value_col);
    } else if (key == "iterations") {
      cfg.iterations = parse_config_u64(value, line_no, value_col);
    } else if (key == "seq_cycles") {
      cfg.per_iteration_seq_cycles = parse_config_u64(value, line_no, value_col);
    } else if (key == "floor_cycles") {
      cfg.period_floor_cycles = parse_config_u64(value, line_no, value_col);
    } else if (key == "looping") {
      if (value != "constant" && value != "linear" && value != "log") {
        throw ParseError("looping must be constant, linear, or log", line_no,
                         value_col);
      }
      cfg.looping.form = parse_looping(value);
    } else if (key == "lambda") {
      cfg.looping.lambda = parse_config_double(value, line_no, value_col);
    } else {
      throw ParseError("unknown config key '" + key + "'", line_no, 1);
    }
  }
  return cfg;
}

std::vector<Cell> outcome_row(std::uint64_t n, const SimOutcome& outcome,
                              std::uint64_t reference) {
  std::vector<Cell> row;
  row.push_back(int_cell(n));
  row.push_back(int_cell(outcome.total_cycles));
  row.push_back(int_cell(reference));
  row.push_back(num_cell(outcome.speedup));
  if (outcome.alpha_eff.has_value()) {
    row.push_back(num_cell(outcome.alpha_eff->alpha()));
    row.push_back(num_cell(outcome.alpha_eff->one_minus_alpha()));
  } else {
    row.push_back(null_cell());
    row.push_back(null_cell());
  }
  row.push_back(num_cell(outcome.payload_fraction));
  row.push_back(num_cell(outcome.idle_fraction));
  row.push_back(int_cell(outcome.payload_cycles_total));
  row.push_back(int_cell(outcome.overhead_cycles_total));
  row.push_back(int_cell(outcome.idle_cycles_total));
  return row;
}

void run_simulate(const SimulateOpts& o) {
  SimConfig cfg;
  DigestBuilder digest("simulate");

  if (!o.preset.empty()) {
    const std::uint64_t preset_n =
        o.units_opt->count() > 0 ? o.units : 100000;
    if (o.preset == "hpl") {
      cfg = hpl_preset(preset_n);
    } else if (o.preset == "hpcg") {
      cfg = hpcg_preset(preset_n);
    } else {
      cfg = brain_preset(preset_n);
    }
    digest.field("preset", o.preset);
  }
  if (!o.config_path.empty()) {
    const std::string text = read_file(o.config_path);
    cfg = apply_config_text(cfg, text);
    digest.field("config_bytes", text);
  }
  if (o.units_opt->count() > 0) cfg.n = o.units;
  if (o.dispatch_opt->count() > 0) cfg.dispatch_cycles = o.dispatch_cycles;
  if (o.join_opt->count() > 0) cfg.join_cycles = o.join_cycles;
  if (o.payload_opt->count() > 0) cfg.payload_cycles = o.payload_cycles;
  if (o.iterations_opt->count() > 0) cfg.iterations = o.iterations;
  if (o.seq_opt->count() > 0) cfg.per_iteration_seq_cycles = o.seq_cycles;
  if (o.floor_opt->count() > 0) cfg.period_floor_cycles = o.floor_cycles;
  if (o.looping_opt->count() > 0) cfg.looping.form = parse_looping(o.looping);
  if (o.lambda_opt->count() > 0) cfg.looping.lambda = o.lambda;

  digest.integer("units", cfg.n)
      .integer("dispatch_cycles", cfg.dispatch_cycles)
      .integer("join_cycles", cfg.join_cycles)
      .integer("payload_cycles", cfg.payload_cycles)
      .integer("iterations", cfg.iterations)
      .integer("seq_cycles", cfg.per_iteration_seq_cycles)
      .integer("floor_cycles", cfg.period_floor_cycles)
      .field("looping", to_string(cfg.looping.form))
      .number("lambda", cfg.looping.lambda);

  Table t;
  t.columns = {"n",
               "total_cycles",
               "reference_cycles",
               "speedup",
               "alpha_eff",
               "one_minus_alpha_eff",
               "payload_fraction",
               "idle_fraction",
               "payload_cycles",
               "overhead_cycles",
               "idle_cycles"};

  ReportMeta meta{"simulate", "", {}};
  if (o.sweep_opt->count() > 0) {
    digest.integer("sweep_lo", o.sweep[0])
        .integer("sweep_hi", o.sweep[1])
        .integer("sweep_points", o.sweep[2]);
    const auto grid =
        log_space_counts(o.sweep[0], o.sweep[1],
                         static_cast<std::size_t>(o.sweep[2]));
    const auto outcomes = sweep_n(cfg, grid);
    for (const auto& [n, outcome] : outcomes) {
      SimConfig point = cfg;
      point.n = n;
      t.rows.push_back(
          outcome_row(n, outcome, single_unit_reference_cycles(point)));
    }
  } else {
    t.object = true;
    t.rows.push_back(
        outcome_row(cfg.n, simulate(cfg), single_unit_reference_cycles(cfg)));
    if (t.rows.front()[4].kind == Cell::Kind::Null) {
      meta.warnings.push_back(
          "no effective parallel fraction: it needs at least two units and "
          "no slowdown");
    }
  }
  meta.digest = digest.hex();
  emit(o.common.format, o.common.out, meta, t);
}

// --------------------------------------------------------------------------
// predict
// --------------------------------------------------------------------------

struct PredictOpts {
  CommonOpts common;
  bool curve_mode = false;
  bool surface_mode = false;
  bool validate_mode = false;
  double alpha = 0.0;
  double one_minus_alpha = 0.0;
  double p_single = 0.0;
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 1000000000;
  std::uint64_t points = 64;
  std::string order = "first";
  std::string looping = "constant";
  double lambda = 0.0;
  double oma_min = 1e-14;
  double oma_max = 1e-2;
  std::uint64_t oma_points = 40;
  std::string in_path;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* oma_opt = nullptr;
  CLI::Option* p_single_opt = nullptr;
  CLI::Option* in_opt = nullptr;
};

void run_predict_curve(const PredictOpts& o) {
  const bool has_alpha = o.alpha_opt->count() > 0;
  const bool has_oma = o.oma_opt->count() > 0;
  if (has_alpha == has_oma) {
    throw CLI::ValidationError(
        "predict", "pass exactly one of --alpha or --one-minus-alpha");
  }
  if (o.p_single_opt->count() == 0) {
    throw CLI::ValidationError("predict", "--curve requires --p-single");
  }

  const AlphaEstimate basis =
      has_alpha ? AlphaEstimate::from_alpha(o.alpha)
                : AlphaEstimate::from_one_minus_alpha(o.one_minus_alpha);
  const CurveOrder order =
      o.order == "second" ? CurveOrder::SecondOrder : CurveOrder::FirstOrder;
  const LoopingSpec looping{parse_looping(o.looping), o.lambda};

  DigestBuilder digest("predict");
  digest.field("mode", "curve")
      .number("one_minus_alpha", basis.one_minus_alpha())
      .number("p_single", o.p_single)
      .integer("n_min", o.n_min)
      .integer("n_max", o.n_max)
      .integer("points", o.points)
      .field("order", to_string(order))
      .field("looping", to_string(looping.form))
      .number("lambda", looping.lambda);

  const auto counts =
      log_space_counts(o.n_min, o.n_max, static_cast<std::size_t>(o.points));
  const PredictionCurve c = curve(basis, o.p_single, counts, order, looping);

  ReportMeta meta{"predict", digest.hex(), {}};
  meta.warnings.push_back(
      "extrapolation: first-order constant-alpha projections are optimistic "
      "upper estimates");
  Table t;
  t.columns = {"n", "nominal", "payload", "efficiency"};
  for (const auto& p : c.points) {
    t.rows.push_back({int_cell(p.n), num_cell(p.nominal), num_cell(p.payload),
                      num_cell(p.efficiency)});
  }
  emit(o.common.format, o.common.out, meta, t);
}

void run_predict_surface(const PredictOpts& o) {
  DigestBuilder digest("predict");
  digest.field("mode", "surface")
      .integer("n_min", o.n_min)
      .integer("n_max", o.n_max)
      .integer("points", o.points)
      .number("oma_min", o.oma_min)
      .number("oma_max", o.oma_max)
      .integer("oma_points", o.oma_points);

  const auto n_axis =
      log_space_counts(o.n_min, o.n_max, static_cast<std::size_t>(o.points));
  const auto oma_axis =
      log_space(o.oma_min, o.oma_max, static_cast<std::size_t>(o.oma_points));
  const SurfaceGrid grid = surface(n_axis, oma_axis);

  ReportMeta meta{"predict", digest.hex(), {}};
  Table t;
  t.columns = {"n", "one_minus_alpha", "efficiency"};
  for (std::size_t i = 0; i < grid.n_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.one_minus_alpha_axis.size(); ++j) {
      t.rows.push_back({int_cell(grid.n_axis[i]),
                        num_cell(grid.one_minus_alpha_axis[j]),
                        num_cell(grid.at(i, j))});
    }
  }
  emit(o.common.format, o.common.out, meta, t);
}

void run_predict_validate(const PredictOpts& o) {
  if (o.in_opt->count() == 0) {
    throw CLI::ValidationError("predict", "--validate requires --in FILE");
  }
  const std::string text = read_file(o.in_path);
  DigestBuilder digest("predict");
  digest.field("mode", "validate").field("in_bytes", text);

  std::istringstream stream(text);
  const auto snapshots = parse_snapshots(stream);

  // Group stages by machine in first-appearance order, then walk each
  // machine's stages in epoch order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<SystemSnapshot>> stages;
  for (const auto& snap : snapshots) {
    auto [it, inserted] = stages.try_emplace(snap.name);
    if (inserted) order.push_back(snap.name);
    it->second.push_back(snap);
  }

  ReportMeta meta{"predict", digest.hex(), {}};
  Table t;
  t.columns = {"name",           "prior_epoch",    "later_epoch",
               "cores_used",     "predicted_rmax", "measured_rmax",
               "relative_error", "prior_p_single", "later_p_single",
               "p_single_changed"};

  for (const auto& name : order) {
    auto& machine = stages[name];
    std::stable_sort(machine.begin(), machine.end(),
                     [](const SystemSnapshot& a, const SystemSnapshot& b) {
                       return a.epoch < b.epoch;
                     });
    if (machine.size() < 2) {
      meta.warnings.push_back("no successor stage for " + name);
      continue;
    }
    for (std::size_t i = 0; i + 1 < machine.size(); ++i) {
      const SystemSnapshot& prior_snap = machine[i];
      const SystemSnapshot& later = machine[i + 1];
      const std::string pair_id = name + " " + to_string(prior_snap.epoch) +
                                  "->" + to_string(later.epoch);
      const DerivedRecord prior = derive(prior_snap);
      if (!prior.alpha.has_value()) {
        meta.warnings.push_back("skipping " + pair_id +
                                ": prior stage has no derivable alpha");
        continue;
      }
      if (later.cores_used < 2) {
        meta.warnings.push_back("skipping " + pair_id +
                                ": later stage has fewer than two units");
        continue;
      }
      const ValidationReport report = validate_successor(prior, later);
      for (const auto& warning : report.warnings) {
        meta.warnings.push_back(pair_id + ": " + warning);
      }
      t.rows.push_back({text_cell(report.name),
                        text_cell(to_string(report.prior_epoch)),
                        text_cell(to_string(report.later_epoch)),
                        int_cell(later.cores_used),
                        num_cell(report.predicted_rmax),
                        num_cell(report.measured_rmax),
                        num_cell(report.relative_error),
                        num_cell(report.prior_p_single),
                        num_cell(report.later_p_single),
                        bool_cell(report.p_single_changed)});
    }
  }
  emit(o.common.format, o.common.out, meta, t);
}

void run_predict(const PredictOpts& o) {
  const int modes = (o.curve_mode ? 1 : 0) + (o.surface_mode ? 1 : 0) +
                    (o.validate_mode ? 1 : 0);
  if (modes != 1) {
    throw CLI::ValidationError(
        "predict", "pass exactly one of --curve, --surface, --validate");
  }
  if (o.curve_mode) {
    run_predict_curve(o);
  } else if (o.surface_mode) {
    run_predict_surface(o);
  } else {
    run_predict_validate(o);
  }
}

// --------------------------------------------------------------------------
// ingest
// --------------------------------------------------------------------------

struct IngestOpts {
  CommonOpts common;
  std::string in_path;
  std::string delimiter = ",";
  bool pairs = false;
};

std::string workload_cell(const SystemSnapshot& snap) {
  return snap.workload == Workload::Other ? snap.workload_text
                                          : to_string(snap.workload);
}

void run_ingest(const IngestOpts& o) {
  if (o.delimiter.size() != 1) {
    throw CLI::ValidationError("ingest",
                               "--delimiter must be a single character");
  }
  const std::string text = read_file(o.in_path);
  DigestBuilder digest("ingest");
  digest.field("delimiter", o.delimiter)
      .field("pairs", o.pairs ? "true" : "false")
      .field("in_bytes", text);

  std::istringstream stream(text);
  const CsvDialect dialect{o.delimiter[0]};
  const auto snapshots = parse_snapshots(stream, dialect);

  ReportMeta meta{"ingest", digest.hex(), {}};
  Table t;
  if (o.pairs) {
    const PairingResult pairing = pair_workloads(snapshots);
    meta.warnings = pairing.warnings;
    t.columns = {"name", "epoch", "eff64", "eff16", "cores", "perf_ratio"};
    for (const auto& pair : pairing.pairs) {
      t.rows.push_back({text_cell(pair.name), text_cell(to_string(pair.epoch)),
                        num_cell(pair.measurement.eff64),
                        num_cell(pair.measurement.eff16),
                        int_cell(pair.measurement.n),
                        num_cell(pair.measurement.perf_ratio)});
    }
  } else {
    t.columns = {"name",        "epoch",      "workload",
                 "cores_total", "cores_used", "rpeak_flops",
                 "rmax_flops",  "clock_hz",   "perf_ratio",
                 "efficiency",  "one_minus_alpha", "corrected_efficiency"};
    for (const auto& snap : snapshots) {
      const DerivedRecord rec = derive(snap);
      std::vector<Cell> row;
      row.push_back(text_cell(rec.snapshot.name));
      row.push_back(text_cell(to_string(rec.snapshot.epoch)));
      row.push_back(text_cell(workload_cell(rec.snapshot)));
      row.push_back(int_cell(rec.snapshot.cores_total));
      row.push_back(int_cell(rec.snapshot.cores_used));
      row.push_back(num_cell(rec.snapshot.rpeak_flops));
      row.push_back(num_cell(rec.snapshot.rmax_flops));
      row.push_back(rec.snapshot.clock_hz ? num_cell(*rec.snapshot.clock_hz)
                                          : null_cell());
      row.push_back(rec.snapshot.perf_ratio
                        ? num_cell(*rec.snapshot.perf_ratio)
                        : null_cell());
      row.push_back(num_cell(rec.efficiency));
      row.push_back(rec.alpha ? num_cell(rec.alpha->one_minus_alpha())
                              : null_cell());
      row.push_back(rec.corrected_efficiency
                        ? num_cell(*rec.corrected_efficiency)
                        : null_cell());
      if (!rec.alpha) {
        meta.warnings.push_back("no derivable alpha for " +
                                rec.snapshot.name + " (" +
                                to_string(rec.snapshot.epoch) +
                                "): fewer than two units");
      }
      t.rows.push_back(std::move(row));
    }
  }
  emit(o.common.format, o.common.out, meta, t);
}

}  // namespace

// --------------------------------------------------------------------------
// main
// --------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "amdahl-lens: performance, efficiency, and scaling analysis for "
      "parallelized sequential systems"};
  app.require_subcommand(1);

  AlphaOpts alpha_opts;
  auto* alpha_cmd = app.add_subcommand(
      "alpha", "Estimate the parallel fraction from a measured efficiency");
  add_common(alpha_cmd, alpha_opts.common);
  alpha_opts.efficiency_opt = alpha_cmd->add_option(
      "--efficiency", alpha_opts.efficiency, "Measured efficiency in (0, 1]");
  alpha_opts.rmax_opt = alpha_cmd->add_option(
      "--rmax", alpha_opts.rmax, "Measured payload performance (flop/s)");
  alpha_opts.rpeak_opt = alpha_cmd->add_option(
      "--rpeak", alpha_opts.rpeak, "Nominal peak performance (flop/s)");
  alpha_cmd->add_option("--cores", alpha_opts.cores, "Processing unit count")
      ->required();
  alpha_cmd->callback([&alpha_opts] { run_alpha(alpha_opts); });

  BoundsOpts bounds_opts;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Technology floors on the sequential fraction");
  add_common(bounds_cmd, bounds_opts.common);
  bounds_cmd
      ->add_option("--kind", bounds_opts.kind, "Which floor to compute")
      ->transform(
          CLI::IsMember({"clock-quantum", "propagation", "os", "addressing"}))
      ->required();
  bounds_cmd->add_option("--window-seconds", bounds_opts.window_seconds,
                         "Measurement window length in seconds");
  bounds_cmd->add_option("--clock-hz", bounds_opts.clock_hz,
                         "Clock frequency in Hz");
  bounds_cmd->add_option("--distance-m", bounds_opts.distance_m,
                         "Signal path length in metres (propagation)");
  bounds_cmd->add_option("--context-switch-cycles",
                         bounds_opts.context_switch_cycles,
                         "Cycles per context switch (os)");
  bounds_opts.units_opt = bounds_cmd->add_option(
      "--units", bounds_opts.units, "Processing unit count (addressing)");
  bounds_cmd->add_option("--cluster-factor", bounds_opts.cluster_factor,
                         "Units addressed per step (addressing)");
  bounds_cmd->add_option("--access-factor", bounds_opts.access_factor,
                         "Rescale for slower instruction or data access");
  bounds_cmd->callback([&bounds_opts] { run_bounds(bounds_opts); });

  DecomposeOpts decompose_opts;
  auto* decompose_cmd = app.add_subcommand(
      "decompose",
      "Split sequential time into housekeeping and per-operand parts");
  add_common(decompose_cmd, decompose_opts.common);
  decompose_cmd
      ->add_option("--model", decompose_opts.model, "Summing model")
      ->transform(CLI::IsMember({"serial", "timeaware"}))
      ->default_str("serial");
  decompose_opts.time64_opt = decompose_cmd->add_option(
      "--time64", decompose_opts.time64,
      "Full-precision sequential time fraction");
  decompose_opts.time16_opt = decompose_cmd->add_option(
      "--time16", decompose_opts.time16,
      "Reduced-precision sequential time fraction (same scale)");
  decompose_opts.eff64_opt = decompose_cmd->add_option(
      "--eff64", decompose_opts.eff64, "Full-precision efficiency");
  decompose_opts.eff16_opt = decompose_cmd->add_option(
      "--eff16", decompose_opts.eff16, "Reduced-precision efficiency");
  decompose_opts.cores_opt = decompose_cmd->add_option(
      "--cores", decompose_opts.cores, "Processing unit count");
  decompose_opts.perf_ratio_opt = decompose_cmd->add_option(
      "--perf-ratio", decompose_opts.perf_ratio,
      "Reduced- over full-precision payload performance ratio");
  decompose_cmd->add_option("--operand-ratio", decompose_opts.operand_ratio,
                            "Operand length ratio between precisions");
  decompose_cmd->callback([&decompose_opts] { run_decompose(decompose_opts); });

  SimulateOpts simulate_opts;
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Cycle-exact fork-join coordination timeline");
  add_common(simulate_cmd, simulate_opts.common);
  simulate_opts.units_opt = simulate_cmd->add_option(
      "--units", simulate_opts.units, "Worker count");
  simulate_opts.dispatch_opt = simulate_cmd->add_option(
      "--dispatch-cycles", simulate_opts.dispatch_cycles,
      "Coordinator cycles to start one worker");
  simulate_opts.join_opt = simulate_cmd->add_option(
      "--join-cycles", simulate_opts.join_cycles,
      "Coordinator cycles to collect one result");
  simulate_opts.payload_opt = simulate_cmd->add_option(
      "--payload-cycles", simulate_opts.payload_cycles,
      "Per-worker payload cycles per iteration");
  simulate_opts.iterations_opt = simulate_cmd->add_option(
      "--iterations", simulate_opts.iterations, "Iteration count");
  simulate_opts.seq_opt = simulate_cmd->add_option(
      "--seq-cycles", simulate_opts.seq_cycles,
      "Coordinator-only cycles per iteration");
  simulate_opts.floor_opt = simulate_cmd->add_option(
      "--floor-cycles", simulate_opts.floor_cycles,
      "Minimum cycles per iteration period (0 = none)");
  simulate_opts.looping_opt =
      simulate_cmd->add_option("--looping", simulate_opts.looping,
                               "Dispatch cost growth with worker count")
          ->transform(CLI::IsMember({"constant", "linear", "log"}));
  simulate_opts.lambda_opt = simulate_cmd->add_option(
      "--lambda", simulate_opts.lambda, "Growth coefficient");
  simulate_cmd
      ->add_option("--preset", simulate_opts.preset,
                   "Start from a workload preset")
      ->transform(CLI::IsMember({"hpl", "hpcg", "brain"}));
  simulate_cmd->add_option("--config", simulate_opts.config_path,
                           "key = value config file (flags override it)");
  simulate_opts.sweep_opt =
      simulate_cmd
          ->add_option("--sweep", simulate_opts.sweep,
                       "MIN MAX POINTS: log-spaced worker-count sweep")
          ->expected(3);
  simulate_cmd->callback([&simulate_opts] { run_simulate(simulate_opts); });

  PredictOpts predict_opts;
  auto* predict_cmd = app.add_subcommand(
      "predict", "Payload curves, efficiency surfaces, stage validation");
  add_common(predict_cmd, predict_opts.common);
  predict_cmd->add_flag("--curve", predict_opts.curve_mode,
                        "Payload performance vs unit count");
  predict_cmd->add_flag("--surface", predict_opts.surface_mode,
                        "Efficiency over (n, 1 - alpha)");
  predict_cmd->add_flag("--validate", predict_opts.validate_mode,
                        "Predict each stage from its predecessor in --in");
  predict_opts.alpha_opt = predict_cmd->add_option(
      "--alpha", predict_opts.alpha, "Parallel fraction basis (curve)");
  predict_opts.oma_opt = predict_cmd->add_option(
      "--one-minus-alpha", predict_opts.one_minus_alpha,
      "Sequential fraction basis (curve)");
  predict_opts.p_single_opt = predict_cmd->add_option(
      "--p-single", predict_opts.p_single,
      "Per-unit performance in flop/s (curve)");
  predict_cmd->add_option("--n-min", predict_opts.n_min,
                          "Smallest unit count");
  predict_cmd->add_option("--n-max", predict_opts.n_max,
                          "Largest unit count");
  predict_cmd->add_option("--points", predict_opts.points,
                          "Unit-count grid points");
  predict_cmd
      ->add_option("--order", predict_opts.order,
                   "first: constant alpha; second: alpha degrades with n")
      ->transform(CLI::IsMember({"first", "second"}));
  predict_cmd
      ->add_option("--looping", predict_opts.looping,
                   "Second-order growth form")
      ->transform(CLI::IsMember({"constant", "linear", "log"}));
  predict_cmd->add_option("--lambda", predict_opts.lambda,
                          "Second-order growth coefficient");
  predict_cmd->add_option("--oma-min", predict_opts.oma_min,
                          "Smallest sequential fraction (surface)");
  predict_cmd->add_option("--oma-max", predict_opts.oma_max,
                          "Largest sequential fraction (surface)");
  predict_cmd->add_option("--oma-points", predict_opts.oma_points,
                          "Sequential-fraction grid points (surface)");
  predict_opts.in_opt = predict_cmd->add_option(
      "--in", predict_opts.in_path, "History CSV (validate)");
  predict_cmd->callback([&predict_opts] { run_predict(predict_opts); });

  IngestOpts ingest_opts;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Parse benchmark CSV rows and derive efficiency and alpha");
  add_common(ingest_cmd, ingest_opts.common);
  ingest_cmd->add_option("--in", ingest_opts.in_path, "Input CSV file")
      ->required();
  ingest_cmd->add_option("--delimiter", ingest_opts.delimiter,
                         "Input field delimiter");
  ingest_cmd->add_flag("--pairs", ingest_opts.pairs,
                       "Emit paired full/reduced-precision measurements");
  ingest_cmd->callback([&ingest_opts] { run_ingest(ingest_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "amdahl-lens: " << e.what() << "\n";
    return 4;
  } catch (const ModelError& e) {
    std::cerr << "amdahl-lens: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "amdahl-lens: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
