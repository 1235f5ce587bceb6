// Copyright 2026 The virtbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "virtbench/catalog.hpp"
#include "virtbench/compare.hpp"
#include "virtbench/report.hpp"
#include "virtbench/runner.hpp"

namespace virtbench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRunError = 2;

struct CliArgs {
  sim::SystemMode system = sim::SystemMode::kNative;
  int iterations = 100;
  int warmup = 10;
  int processes = 1;
  std::optional<double> memory_limit_mb;
  std::optional<double> compute_limit_percent;
  std::optional<std::vector<MetricId>> metrics;
  std::optional<std::filesystem::path> compare;
  std::optional<std::filesystem::path> calibration;
  std::uint64_t seed = 42;
  std::filesystem::path output;  // prefix; empty means results/<system>-<seed>
  bool help = false;
  std::string help_text;

  std::filesystem::path output_prefix() const {
    if (!output.empty()) return output;
    return std::filesystem::path("results") /
           (std::string(sim::to_string(system)) + "-" + std::to_string(seed));
  }

  RunConfig run_config() const {
    RunConfig c;
    c.system = system;
    c.iterations = iterations;
    c.warmup = warmup;
    c.tenants = processes;
    c.memory_limit_mb = memory_limit_mb;
    c.compute_limit_percent = compute_limit_percent;
    c.metric_filter = metrics;
    c.seed = seed;
    c.compare_path = compare;
    return c;
  }
};

inline std::vector<MetricId> parse_metric_list(const std::string& text) {
  std::vector<MetricId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto trimmed = std::string(detail::trim(item));
    if (trimmed.empty()) continue;
    if (!MetricId::well_formed(trimmed)) throw UsageError("malformed metric id '" + trimmed + "'");
    auto id = MetricId::parse(trimmed);
    if (!id) throw UsageError("unknown metric id '" + trimmed + "'");
    ids.push_back(*id);
  }
  if (ids.empty()) throw UsageError("--metrics needs at least one metric id");
  return ids;
}

inline CliArgs parse_args(const std::vector<std::string>& argv) {
  CliArgs a;
  CLI::App app{"Benchmark a GPU virtualization layer against the 56-metric taxonomy.", "virtbench"};
  std::string system, metrics, output, compare, calibration;
  std::optional<double> memory_limit, compute_limit;
  app.add_option("--system", system, "System under test: native, hami, fcsp or mig")->required();
  app.add_option("--iterations", a.iterations, "Measured iterations per metric")->capture_default_str();
  app.add_option("--warmup", a.warmup, "Discarded warmup iterations per metric")->capture_default_str();
  app.add_option("--processes", a.processes,
                 "Tenants sharing the device (simulated op streams, not OS processes)")
      ->capture_default_str();
  app.add_option("--memory-limit", memory_limit, "Per-tenant memory limit in MB");
  app.add_option("--compute-limit", compute_limit, "SM utilization limit in percent");
  app.add_option("--metrics", metrics, "Comma-separated metric ids, e.g. LLM-001,LLM-004");
  app.add_option("--compare", compare, "Previous JSON report to compare against");
  app.add_option("--calibration", calibration, "Calibration file (default: $VIRTBENCH_CALIBRATION)");
  app.add_option("--seed", a.seed, "Simulation seed")->capture_default_str();
  app.add_option("--output", output, "Output prefix (default: results/<system>-<seed>)");

  std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    a.help = true;
    a.help_text = app.help();
    return a;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto mode = sim::mode_from_string(system);
  if (!mode) throw UsageError("unknown system '" + system + "' (expected one of: native, hami, fcsp, mig)");
  a.system = *mode;
  a.memory_limit_mb = memory_limit;
  a.compute_limit_percent = compute_limit;
  if (!metrics.empty()) a.metrics = parse_metric_list(metrics);
  if (!compare.empty()) a.compare = compare;
  if (!calibration.empty()) {
    a.calibration = calibration;
  } else if (const char* env = std::getenv("VIRTBENCH_CALIBRATION"); env && *env) {
    a.calibration = std::filesystem::path(env);
  }
  a.output = output;
  try {
    a.run_config().validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return a;
}

inline int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CliArgs args;
  try {
    args = parse_args(argv);
  } catch (const UsageError& e) {
    err << "virtbench: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  if (args.help) {
    out << args.help_text;
    return kExitOk;
  }
  if (args.compare && !std::filesystem::exists(*args.compare)) {
    err << "virtbench: baseline report not found: " << args.compare->string() << "\n";
    return kExitRunError;
  }
  try {
    auto catalog = load_catalog(args.calibration);
    auto report = run_benchmark(args.run_config(), catalog);
    auto files = write_reports(report, args.output_prefix());
    out << emit_txt(report) << "\nWrote " << files.json.string() << ", " << files.csv.string() << ", "
        << files.txt.string() << "\n";
    if (args.compare) {
      auto cmp = compare_reports(report, *args.compare);
      std::filesystem::path cmp_path = args.output_prefix().string() + ".compare.json";
      std::ofstream(cmp_path, std::ios::binary) << emit_comparison_json(cmp);
      out << "\n" << emit_comparison_txt(cmp) << "Wrote " << cmp_path.string() << "\n";
    }
  } catch (const Error& e) {
    err << "virtbench: " << e.what() << "\n";
    return kExitRunError;
  } catch (const std::exception& e) {
    err << "virtbench: " << e.what() << "\n";
    return kExitRunError;
  }
  return kExitOk;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace virtbench
