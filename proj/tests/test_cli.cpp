// End-to-end tests of the amdahl-lens binary: report shape, golden values,
// exit codes, and byte-identical determinism. The binary path arrives via the
// AMDAHL_LENS_BIN environment variable, fixtures via AMDAHL_FIXTURE_DIR.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unistd.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

std::string cli_binary() {
  const char* bin = std::getenv("AMDAHL_LENS_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "AMDAHL_LENS_BIN must point at amdahl-lens");
  return bin;
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = "'" + cli_binary() + "' " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool has(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string fixture_path(const std::string& name) {
  const char* dir = std::getenv("AMDAHL_FIXTURE_DIR");
  const std::string base = dir != nullptr ? dir : "tests/fixtures";
  return base + "/" + name;
}

std::filesystem::path temp_file(const std::string& stem) {
  return std::filesystem::temp_directory_path() /
         ("amdahl_cli_" + std::to_string(::getpid()) + "_" + stem);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read " << path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("alpha emits the full report as one JSON object") {
  const auto r = run_cli("alpha --efficiency 0.808 --cores 7299072");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "{\"command\":\"alpha\",\"inputs_digest\":\"fnv1a-64:aa71f9dbe7832f92\","
        "\"results\":{\"efficiency\":0.808000000,\"cores\":7299072,"
        "\"alpha\":0.999999967,\"one_minus_alpha\":3.25553433e-08,"
        "\"max_gain\":3.07169238e+07,\"speedup\":5.89765018e+06},"
        "\"warnings\":[]}\n");
}

TEST_CASE("alpha accepts the rmax over rpeak route") {
  const auto r = run_cli("alpha --rmax 74 --rpeak 100 --cores 2414592");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"efficiency\":0.740000000"));
  CHECK(has(r.output, "\"one_minus_alpha\":1.45511746e-07"));
}

TEST_CASE("alpha flags a fully parallel measurement") {
  const auto r = run_cli("alpha --efficiency 1 --cores 100");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"alpha\":1.00000000"));
  CHECK(has(r.output, "\"one_minus_alpha\":0"));
  CHECK(has(r.output, "\"max_gain\":null"));
  CHECK(has(r.output, "gain limit is unbounded"));
}

TEST_CASE("alpha reports are byte-identical across runs and sinks") {
  const auto out1 = temp_file("alpha1.json");
  const auto out2 = temp_file("alpha2.json");
  const std::string flags = "alpha --efficiency 0.808 --cores 7299072";
  const auto direct = run_cli(flags);
  CHECK(run_cli(flags + " --out '" + out1.string() + "'").exit_code == 0);
  CHECK(run_cli(flags + " --out '" + out2.string() + "'").exit_code == 0);
  const std::string first = read_file(out1);
  CHECK(first == read_file(out2));
  CHECK(first == direct.output);
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("alpha --efficiency 0.9").exit_code == 2);  // missing --cores
  CHECK(run_cli("alpha --efficiency 0.9 --rmax 1 --rpeak 2 --cores 8")
            .exit_code == 2);
  CHECK(run_cli("alpha --rmax 1 --cores 8").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("alpha --efficiency 0.9 --cores 8 --format xml").exit_code == 2);
  CHECK(run_cli("bounds --kind warp").exit_code == 2);
  CHECK(run_cli("bounds --kind addressing").exit_code == 2);  // needs --units
  CHECK(run_cli("predict --curve --surface").exit_code == 2);
  CHECK(run_cli("predict").exit_code == 2);
  CHECK(run_cli("decompose --time64 1e-8").exit_code == 2);
  CHECK(run_cli("ingest --in x.csv --delimiter ';;'").exit_code == 2);
}

TEST_CASE("infeasible measurements exit with code 3") {
  CHECK(run_cli("alpha --efficiency 1.2 --cores 64").exit_code == 3);
  CHECK(run_cli("alpha --efficiency 0.001 --cores 64").exit_code == 3);
  CHECK(run_cli("alpha --rmax -5 --rpeak 10 --cores 64").exit_code == 3);
  CHECK(run_cli("decompose --time64 1e-8 --time16 2e-8").exit_code == 3);
  CHECK(run_cli("decompose --time64 9e-8 --time16 2e-8").exit_code == 3);
  CHECK(run_cli("bounds --kind addressing --units 16 --cluster-factor 0.5")
            .exit_code == 3);
}

TEST_CASE("missing files exit with code 4") {
  CHECK(run_cli("ingest --in /nonexistent/nowhere.csv").exit_code == 4);
  CHECK(run_cli("predict --validate --in /nonexistent/nowhere.csv").exit_code ==
        4);
  CHECK(run_cli("alpha --efficiency 0.9 --cores 8 --out "
                "/nonexistent_dir_zz/out.json")
            .exit_code == 4);
}

TEST_CASE("help exits cleanly and names every subcommand") {
  const auto r = run_cli("--help");
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"alpha", "bounds", "decompose", "simulate", "predict", "ingest"}) {
    CHECK(has(r.output, name));
  }
}

TEST_CASE("bounds CSV report is a golden file") {
  const auto r = run_cli("bounds --kind clock-quantum --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "# command: bounds\n"
        "# inputs_digest: fnv1a-64:7946e72875df4ed6\n"
        "kind,label,window_seconds,clock_hz,window_cycles,sequential_cycles,"
        "one_minus_alpha_bound,max_gain\n"
        "clock_quantum,other,13298.0000,1.45000000e+09,1.92821000e+13,"
        "2.00000000,1.03723142e-13,9.64105000e+12\n");
}

TEST_CASE("bounds reproduces the light-propagation example") {
  const auto r =
      run_cli("bounds --kind propagation --distance-m 100 --clock-hz 1e9");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"sequential_cycles\":668.000000"));
  CHECK(has(r.output, "\"one_minus_alpha_bound\":5.02331178e-11"));
  CHECK(has(r.output, "\"max_gain\":1.99071856e+10"));
  CHECK(has(r.output, "\"label\":\"propagation\""));
}

TEST_CASE("bounds applies the access-scaling rescale") {
  const auto r = run_cli(
      "bounds --kind propagation --distance-m 100 --clock-hz 1e9 "
      "--access-factor 10");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"kind\":\"instruction_access\""));
  CHECK(has(r.output, "\"sequential_cycles\":6680.00000"));
}

TEST_CASE("decompose splits table times under both models") {
  const auto serial = run_cli("decompose --time64 3.25e-8 --time16 1.79e-8");
  CHECK(serial.exit_code == 0);
  CHECK(has(serial.output, "\"model\":\"serial\""));
  CHECK(has(serial.output, "\"f16\":4.86666667e-09"));
  CHECK(has(serial.output, "\"f0\":1.30333333e-08"));
  CHECK(has(serial.output, "\"expected_perf_ratio\":1.81564246"));

  const auto timeaware =
      run_cli("decompose --model timeaware --time64 3.25e-8 --time16 1.79e-8");
  CHECK(timeaware.exit_code == 0);
  CHECK(has(timeaware.output, "\"model\":\"timeaware\""));
  CHECK(has(timeaware.output, "\"f16\":7.00399886e-09"));
  CHECK(has(timeaware.output, "\"f0\":1.64728261e-08"));
}

TEST_CASE("decompose accepts measured efficiencies") {
  const auto r = run_cli(
      "decompose --eff64 0.808 --eff16 0.691 --cores 7299072 "
      "--perf-ratio 3.42");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"time64\":3.25553433e-08"));
  CHECK(has(r.output, "\"time16\":1.79137594e-08"));
}

TEST_CASE("simulate reports the hand-traced two-worker timeline") {
  const auto r = run_cli(
      "simulate --units 2 --dispatch-cycles 1 --join-cycles 1 "
      "--payload-cycles 100");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"total_cycles\":104"));
  CHECK(has(r.output, "\"reference_cycles\":200"));
  CHECK(has(r.output, "\"speedup\":1.92307692"));
  CHECK(has(r.output, "\"alpha_eff\":0.960000000"));
  CHECK(has(r.output, "\"one_minus_alpha_eff\":0.0400000000"));
  CHECK(has(r.output, "\"payload_fraction\":0.961538462"));
  CHECK(has(r.output, "\"warnings\":[]"));
}

TEST_CASE("simulate warns when no alpha can be derived") {
  const auto r = run_cli("simulate --units 1 --payload-cycles 100");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"alpha_eff\":null"));
  CHECK(has(r.output, "no effective parallel fraction"));
}

TEST_CASE("simulate sweeps emit one CSV row per grid point") {
  const auto r = run_cli(
      "simulate --dispatch-cycles 1 --join-cycles 1 --payload-cycles 1000 "
      "--sweep 2 16 4 --format csv");
  CHECK(r.exit_code == 0);
  std::size_t data_lines = 0;
  std::istringstream lines(r.output);
  std::string line;
  bool header_seen = false;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header_seen) {
      header_seen = true;
      CHECK(line ==
            "n,total_cycles,reference_cycles,speedup,alpha_eff,"
            "one_minus_alpha_eff,payload_fraction,idle_fraction,"
            "payload_cycles,overhead_cycles,idle_cycles");
      continue;
    }
    ++data_lines;
  }
  CHECK(data_lines == 4);
  CHECK(has(r.output, "\n2,"));
  CHECK(has(r.output, "\n16,"));
}

TEST_CASE("simulate presets run out of the box") {
  const auto r = run_cli("simulate --preset brain");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"total_cycles\":100000000"));
  CHECK(has(r.output, "\"speedup\":100.000000"));
}

TEST_CASE("simulate reads a config file and lets flags override it") {
  const auto cfg = temp_file("sim.cfg");
  {
    std::ofstream out(cfg);
    out << "# two workers, cheap coordination\n"
        << "units = 2\n"
        << "dispatch_cycles = 1\n"
        << "join_cycles = 1\n"
        << "payload_cycles = 100\n";
  }
  const auto base = run_cli("simulate --config '" + cfg.string() + "'");
  CHECK(base.exit_code == 0);
  CHECK(has(base.output, "\"total_cycles\":104"));

  const auto overridden = run_cli("simulate --config '" + cfg.string() +
                                  "' --payload-cycles 1000");
  CHECK(overridden.exit_code == 0);
  CHECK(has(overridden.output, "\"total_cycles\":1004"));
  std::filesystem::remove(cfg);
}

TEST_CASE("simulate rejects malformed config files with code 3") {
  const auto cfg = temp_file("sim_bad.cfg");
  {
    std::ofstream out(cfg);
    out << "units = 2\npayload_cycles = sixty\n";
  }
  const auto r = run_cli("simulate --config '" + cfg.string() + "'");
  CHECK(r.exit_code == 3);
  CHECK(has(r.output, "line 2"));
  std::filesystem::remove(cfg);

  const auto cfg2 = temp_file("sim_bad2.cfg");
  {
    std::ofstream out(cfg2);
    out << "warp_factor = 9\n";
  }
  CHECK(run_cli("simulate --config '" + cfg2.string() + "'").exit_code == 3);
  std::filesystem::remove(cfg2);
}

TEST_CASE("ingest derives efficiency and alpha for every fixture row") {
  const auto r =
      run_cli("ingest --in '" + fixture_path("top500_sample.csv") + "'");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"command\":\"ingest\""));
  CHECK(has(r.output, "\"name\":\"Fugaku\""));
  CHECK(has(r.output, "\"efficiency\":0.808652718"));
  CHECK(has(r.output, "\"clock_hz\":2.20000000e+09"));
  // Partial-machine sparse run: efficiency rescaled to the full machine.
  CHECK(has(r.output, "\"corrected_efficiency\":0.200000000"));
  // Single-unit row: no derivable alpha, flagged but not fatal.
  CHECK(has(r.output, "\"one_minus_alpha\":null"));
  CHECK(has(r.output, "no derivable alpha for Uno"));
}

TEST_CASE("ingest CSV output mirrors the input plus derived columns") {
  const auto r = run_cli("ingest --in '" + fixture_path("top500_sample.csv") +
                         "' --format csv");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output,
            "name,epoch,workload,cores_total,cores_used,rpeak_flops,"
            "rmax_flops,clock_hz,perf_ratio,efficiency,one_minus_alpha,"
            "corrected_efficiency\n"));
  CHECK(has(r.output,
            "Fugaku,2020-06,HPL,7299072,7299072,5.13854700e+17,"
            "4.15530000e+17,2.20000000e+09,,0.808652718,"));
  CHECK(has(r.output,
            "Uno,2020-06,HPL,1,1,1.00000000e+12,9.00000000e+11,,,"
            "0.900000000,,"));
  CHECK(has(r.output, ",0.0200000000,"));  // Meso efficiency
  CHECK(has(r.output, ",0.200000000\n"));  // Meso corrected efficiency
  CHECK(has(r.output, "# warning: no derivable alpha for Uno"));
}

TEST_CASE("ingest pairs full- and reduced-precision rows") {
  const auto r = run_cli("ingest --in '" + fixture_path("top500_sample.csv") +
                         "' --pairs");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"eff64\":0.808652718"));
  CHECK(has(r.output, "\"perf_ratio\":3.01000000"));
  CHECK(has(r.output, "Uno"));  // unmatched row surfaces as a warning
  std::size_t names = 0;
  for (std::size_t pos = 0;
       (pos = r.output.find("\"name\":", pos)) != std::string::npos; ++pos) {
    ++names;
  }
  CHECK(names == 2);
}

TEST_CASE("ingest rejects malformed CSV with code 3") {
  const auto bad = temp_file("bad.csv");
  {
    std::ofstream out(bad);
    out << "name,epoch,workload,cores_total,cores_used,rpeak_flops,"
           "rmax_flops\n"
        << "Box,2020-13,HPL,64,64,100,90\n";
  }
  const auto r = run_cli("ingest --in '" + bad.string() + "'");
  CHECK(r.exit_code == 3);
  CHECK(has(r.output, "line 2"));
  std::filesystem::remove(bad);
}

TEST_CASE("predict curve points follow the scalar model") {
  const auto r = run_cli(
      "predict --curve --one-minus-alpha 1e-7 --p-single 1e9 --points 16");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"n\":1,\"nominal\":1.00000000e+09,"
                      "\"payload\":1.00000000e+09,\"efficiency\":1.00000000"));
  CHECK(has(r.output, "extrapolation"));
  std::size_t points = 0;
  for (std::size_t pos = 0;
       (pos = r.output.find("\"n\":", pos)) != std::string::npos; ++pos) {
    ++points;
  }
  CHECK(points == 16);
}

TEST_CASE("predict surface hits the published grid cell") {
  const auto r = run_cli(
      "predict --surface --n-min 7299072 --n-max 7299072 --points 1 "
      "--oma-min 3.25e-8 --oma-max 3.25e-8 --oma-points 1");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"efficiency\":0.808263814"));

  const auto trivial = run_cli(
      "predict --surface --n-min 1 --n-max 1 --points 1 "
      "--oma-min 0.5 --oma-max 0.5 --oma-points 1");
  CHECK(trivial.exit_code == 0);
  CHECK(has(trivial.output, "\"efficiency\":1.00000000"));
}

TEST_CASE("predict validate projects each stage onto its successor") {
  const auto r = run_cli("predict --validate --in '" +
                         fixture_path("history_sample.csv") + "'");
  CHECK(r.exit_code == 0);
  CHECK(has(r.output, "\"name\":\"Daint\""));
  CHECK(has(r.output, "\"prior_epoch\":\"2019-06\""));
  CHECK(has(r.output, "\"later_epoch\":\"2021-06\""));
  CHECK(has(r.output, "\"measured_rmax\":1.81818347e+15"));
  CHECK(has(r.output, "\"p_single_changed\":false"));
  CHECK(has(r.output, "\"warnings\":[]"));
}

TEST_CASE("ingest and predict curve outputs are byte-identical across runs") {
  const auto a = temp_file("det_a");
  const auto b = temp_file("det_b");

  const std::string ingest_cmd =
      "ingest --in '" + fixture_path("top500_sample.csv") + "' --out '";
  CHECK(run_cli(ingest_cmd + a.string() + "'").exit_code == 0);
  CHECK(run_cli(ingest_cmd + b.string() + "'").exit_code == 0);
  CHECK(read_file(a) == read_file(b));

  const std::string curve_cmd =
      "predict --curve --one-minus-alpha 3.25e-8 --p-single 6.15e10 "
      "--points 64 --out '";
  CHECK(run_cli(curve_cmd + a.string() + "'").exit_code == 0);
  const std::string first = read_file(a);
  CHECK(run_cli(curve_cmd + b.string() + "'").exit_code == 0);
  CHECK(first == read_file(b));
  CHECK(first.find("\"command\":\"predict\"") != std::string::npos);

  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
