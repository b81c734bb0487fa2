#include "amdahl/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>

#include "amdahl/format.hpp"

namespace amdahl {

namespace {

struct Cell {
  std::string text;
  std::size_t column = 1;  // 1-based offset of the cell start in its line
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<Cell> split_row(const std::string& line, char delimiter,
                            std::size_t line_no) {
  std::vector<Cell> cells;
  Cell current;
  current.column = 1;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.text += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.text += c;
      }
      continue;
    }
    if (c == '"' && current.text.empty() && !was_quoted) {
      in_quotes = true;
      was_quoted = true;
      continue;
    }
    if (c == delimiter) {
      cells.push_back(std::move(current));
      current = Cell{};
      current.column = i + 2;
      was_quoted = false;
      continue;
    }
    current.text += c;
  }
  if (in_quotes) {
    throw ParseError("unterminated quoted field", line_no, current.column);
  }
  cells.push_back(std::move(current));
  return cells;
}

std::uint64_t parse_count(const Cell& cell, std::size_t line_no,
                          const char* what) {
  const std::string_view text = trim(cell.text);
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(std::string(what) + " must be a whole number, got '" +
                         std::string(text) + "'",
                     line_no, cell.column);
  }
  return value;
}

double parse_real(const Cell& cell, std::size_t line_no, const char* what) {
  const std::string_view text = trim(cell.text);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(std::string(what) + " must be a number, got '" +
                         std::string(text) + "'",
                     line_no, cell.column);
  }
  return value;
}

}  // namespace

Workload parse_workload(std::string_view text) {
  const std::string key = lower(trim(text));
  if (key == "hpl") return Workload::Hpl;
  if (key == "hpcg") return Workload::Hpcg;
  if (key == "hpl-ai" || key == "hpl_ai" || key == "hplai") return Workload::HplAi;
  if (key == "fp0") return Workload::Fp0;
  return Workload::Other;
}

const char* to_string(Workload workload) noexcept {
  switch (workload) {
    case Workload::Hpl: return "HPL";
    case Workload::Hpcg: return "HPCG";
    case Workload::HplAi: return "HPL-AI";
    case Workload::Fp0: return "FP0";
    case Workload::Other: return "other";
  }
  return "other";
}

std::string to_string(const Epoch& epoch) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", epoch.year, epoch.month);
  return std::string(buf);
}

Epoch parse_epoch(std::string_view text) {
  const std::string_view t = trim(text);
  Epoch epoch;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [p1, ec1] = std::from_chars(begin, end, epoch.year);
  if (ec1 != std::errc{} || p1 == end || *p1 != '-') {
    throw std::invalid_argument("epoch must look like YYYY-MM, got '" +
                                std::string(t) + "'");
  }
  auto [p2, ec2] = std::from_chars(p1 + 1, end, epoch.month);
  if (ec2 != std::errc{} || p2 != end || epoch.month < 1 || epoch.month > 12 ||
      epoch.year < 1000 || epoch.year > 9999) {
    throw std::invalid_argument("epoch must look like YYYY-MM, got '" +
                                std::string(t) + "'");
  }
  return epoch;
}

std::vector<SystemSnapshot> parse_snapshots(std::istream& in,
                                            const CsvDialect& dialect) {
  std::string line;
  std::size_t line_no = 0;

  // Header row: mandatory columns may appear in any order, case-insensitively.
  std::map<std::string, std::size_t> columns;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_row(line, dialect.delimiter, line_no);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string name = lower(trim(cells[i].text));
      if (name.empty()) {
        throw ParseError("empty column name in header", line_no, cells[i].column);
      }
      if (!columns.emplace(name, i).second) {
        throw ParseError("duplicate column '" + name + "' in header", line_no,
                         cells[i].column);
      }
    }
    break;
  }
  if (columns.empty()) {
    throw ParseError("input has no header row", 1, 1);
  }
  static constexpr const char* kMandatory[] = {
      "name",       "epoch",       "workload",  "cores_total",
      "cores_used", "rpeak_flops", "rmax_flops"};
  for (const char* column : kMandatory) {
    if (!columns.count(column)) {
      throw ParseError("missing mandatory column '" + std::string(column) + "'",
                       line_no, 1);
    }
  }
  const auto optional_index = [&](const char* name) {
    const auto it = columns.find(name);
    return it == columns.end() ? static_cast<std::size_t>(-1) : it->second;
  };
  const std::size_t clock_idx = optional_index("clock_hz");
  const std::size_t ratio_idx = optional_index("perf_ratio");

  std::vector<SystemSnapshot> snapshots;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_row(line, dialect.delimiter, line_no);
    const auto cell = [&](std::size_t index) -> const Cell& {
      if (index >= cells.size()) {
        throw ParseError("row has " + std::to_string(cells.size()) +
                             " fields but the header names more",
                         line_no, line.size() + 1);
      }
      return cells[index];
    };

    SystemSnapshot s;
    const Cell& name_cell = cell(columns["name"]);
    s.name = std::string(trim(name_cell.text));
    if (s.name.empty()) {
      throw ParseError("name must not be empty", line_no, name_cell.column);
    }
    const Cell& epoch_cell = cell(columns["epoch"]);
    try {
      s.epoch = parse_epoch(epoch_cell.text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, epoch_cell.column);
    }
    const Cell& workload_cell = cell(columns["workload"]);
    s.workload_text = std::string(trim(workload_cell.text));
    if (s.workload_text.empty()) {
      throw ParseError("workload must not be empty", line_no, workload_cell.column);
    }
    s.workload = parse_workload(s.workload_text);
    s.cores_total = parse_count(cell(columns["cores_total"]), line_no, "cores_total");
    s.cores_used = parse_count(cell(columns["cores_used"]), line_no, "cores_used");
    s.rpeak_flops = parse_real(cell(columns["rpeak_flops"]), line_no, "rpeak_flops");
    s.rmax_flops = parse_real(cell(columns["rmax_flops"]), line_no, "rmax_flops");
    if (clock_idx != static_cast<std::size_t>(-1) && clock_idx < cells.size() &&
        !trim(cells[clock_idx].text).empty()) {
      s.clock_hz = parse_real(cells[clock_idx], line_no, "clock_hz");
    }
    if (ratio_idx != static_cast<std::size_t>(-1) && ratio_idx < cells.size() &&
        !trim(cells[ratio_idx].text).empty()) {
      s.perf_ratio = parse_real(cells[ratio_idx], line_no, "perf_ratio");
    }

    const std::string record = s.name + " " + to_string(s.epoch) + " " +
                               (s.workload == Workload::Other ? s.workload_text
                                                              : to_string(s.workload));
    if (s.cores_total == 0 || s.cores_used == 0) {
      throw ParseError("core counts must be at least 1 (" + record + ")", line_no, 1);
    }
    if (s.cores_used > s.cores_total) {
      throw IntegrityError("record " + record + " uses more cores than it has");
    }
    if (!(s.rpeak_flops > 0.0) || !(s.rmax_flops > 0.0)) {
      throw ParseError("performance figures must be positive (" + record + ")",
                       line_no, 1);
    }
    if (s.rmax_flops > s.rpeak_flops) {
      throw IntegrityError("record " + record +
                           " reports r_max above r_peak, which is impossible");
    }
    if (s.clock_hz && !(*s.clock_hz > 0.0)) {
      throw ParseError("clock_hz must be positive (" + record + ")", line_no, 1);
    }
    if (s.perf_ratio && !(*s.perf_ratio > 0.0)) {
      throw ParseError("perf_ratio must be positive (" + record + ")", line_no, 1);
    }
    snapshots.push_back(std::move(s));
  }
  return snapshots;
}

std::string serialize_snapshots(std::span<const SystemSnapshot> snapshots) {
  std::string out =
      "name,epoch,workload,cores_total,cores_used,rpeak_flops,rmax_flops,"
      "clock_hz,perf_ratio\n";
  for (const auto& s : snapshots) {
    const std::string workload =
        s.workload == Workload::Other ? s.workload_text : to_string(s.workload);
    const std::string cells[] = {
        s.name,
        to_string(s.epoch),
        workload,
        std::to_string(s.cores_total),
        std::to_string(s.cores_used),
        format_number(s.rpeak_flops),
        format_number(s.rmax_flops),
        s.clock_hz ? format_number(*s.clock_hz) : std::string{},
        s.perf_ratio ? format_number(*s.perf_ratio) : std::string{},
    };
    out += csv_row(cells);
  }
  return out;
}

DerivedRecord derive(const SystemSnapshot& snapshot) {
  DerivedRecord record;
  record.snapshot = snapshot;
  record.efficiency = snapshot.rmax_flops / snapshot.rpeak_flops;
  if (snapshot.cores_used >= 2) {
    record.alpha = alpha_from_efficiency(record.efficiency, snapshot.cores_used);
  }
  if (snapshot.workload == Workload::Hpcg && snapshot.cores_used < snapshot.cores_total) {
    record.corrected_efficiency =
        record.efficiency * (static_cast<double>(snapshot.cores_total) /
                             static_cast<double>(snapshot.cores_used));
  }
  return record;
}

PairingResult pair_workloads(std::span<const SystemSnapshot> snapshots) {
  PairingResult result;
  using Key = std::pair<std::string, Epoch>;
  std::map<Key, const SystemSnapshot*> reduced;
  std::vector<const SystemSnapshot*> full_runs;

  for (const auto& s : snapshots) {
    if (s.workload == Workload::HplAi) {
      const Key key{s.name, s.epoch};
      if (!reduced.emplace(key, &s).second) {
        result.warnings.push_back("duplicate HPL-AI row for " + s.name + " " +
                                  to_string(s.epoch) + "; using the first");
      }
    } else if (s.workload == Workload::Hpl) {
      full_runs.push_back(&s);
    }
  }

  std::map<Key, bool> matched_reduced;
  std::map<Key, bool> seen_full;
  for (const SystemSnapshot* hpl : full_runs) {
    const Key key{hpl->name, hpl->epoch};
    if (seen_full[key]) {
      result.warnings.push_back("duplicate HPL row for " + hpl->name + " " +
                                to_string(hpl->epoch) + "; using the first");
      continue;
    }
    seen_full[key] = true;
    const auto it = reduced.find(key);
    if (it == reduced.end()) {
      result.warnings.push_back("no HPL-AI companion for " + hpl->name + " " +
                                to_string(hpl->epoch));
      continue;
    }
    matched_reduced[key] = true;
    const SystemSnapshot* ai = it->second;
    if (ai->cores_used != hpl->cores_used) {
      result.warnings.push_back("core counts differ between HPL and HPL-AI for " +
                                hpl->name + " " + to_string(hpl->epoch) +
                                "; using the HPL count");
    }
    double ratio;
    if (ai->perf_ratio) {
      ratio = *ai->perf_ratio;
    } else if (hpl->perf_ratio) {
      ratio = *hpl->perf_ratio;
    } else {
      ratio = ai->rmax_flops / hpl->rmax_flops;
    }
    try {
      DualPrecisionMeasurement m(hpl->rmax_flops / hpl->rpeak_flops,
                                 ai->rmax_flops / ai->rpeak_flops,
                                 hpl->cores_used, ratio);
      result.pairs.push_back(PairedMeasurement{hpl->name, hpl->epoch, m});
    } catch (const std::exception& e) {
      result.warnings.push_back("skipping pair for " + hpl->name + " " +
                                to_string(hpl->epoch) + ": " + e.what());
    }
  }
  for (const auto& [key, ai] : reduced) {
    if (!matched_reduced[key]) {
      result.warnings.push_back("no HPL companion for " + key.first + " " +
                                to_string(key.second));
    }
  }
  return result;
}

}  // namespace amdahl
