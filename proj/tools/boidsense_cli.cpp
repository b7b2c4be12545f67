// boidsense command-line entry point.
//
//   boidsense run <config> [--trace PATH] [--format csv|jsonl] [--metrics PATH]
//                          [--detections PATH] [--plot PATH --style tracks|snapshot]
//   boidsense check <trace>
//   boidsense metrics <trace> [--out PATH] [--detections PATH]
//
// Exit status: 0 success, 1 validation / invariant failure, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "boidsense/config.hpp"
#include "boidsense/engine.hpp"
#include "boidsense/metrics.hpp"
#include "boidsense/plot.hpp"
#include "boidsense/trace_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct RunOptions {
  std::string config_path;
  std::string trace_path;
  std::string format;
  std::string metrics_path;
  std::string detections_path;
  std::string plot_path;
  std::string style;
};

struct TraceOptions {
  std::string trace_path;
  std::string out_path;
  std::string detections_path;
};

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    boidsense::write_file(path, contents);
  }
}

int cmd_run(const RunOptions& opt) {
  using namespace boidsense;
  ScenarioFile scenario = parse_scenario(read_file(opt.config_path));

  const std::string trace_path = !opt.trace_path.empty() ? opt.trace_path : scenario.trace_path.value_or("");
  const std::string metrics_path =
      !opt.metrics_path.empty() ? opt.metrics_path : scenario.metrics_path.value_or("");
  const std::string detections_path =
      !opt.detections_path.empty() ? opt.detections_path : scenario.detections_path.value_or("");
  const std::string plot_path = !opt.plot_path.empty() ? opt.plot_path : scenario.plot_path.value_or("");
  TraceFormat format = scenario.trace_format.value_or(
      trace_path.ends_with(".jsonl") ? TraceFormat::jsonl : TraceFormat::csv);
  if (!opt.format.empty()) format = *trace_format_from_string(opt.format);
  PlotStyle style = scenario.plot_style.value_or(PlotStyle::tracks);
  if (!opt.style.empty()) style = *plot_style_from_string(opt.style);

  std::cerr << "# resolved scenario\n" << serialize_config(scenario.config);

  const SimConfig& config = scenario.config;
  SimulationState state = init_simulation(config);
  const auto traces = run_from(state, config.ticks);

  if (!trace_path.empty()) write_file(trace_path, export_trace(traces, format, config));
  if (!metrics_path.empty()) {
    emit(metrics_path, export_metrics(compute_metrics(traces, config.flock_params, config.bounds)));
  }
  if (!detections_path.empty()) emit(detections_path, export_detection_summary(detection_summary(traces)));
  if (!plot_path.empty()) write_file(plot_path, plot_tracks(traces, style, config.bounds));

  if (config.invariant_mode == InvariantMode::record) {
    const auto violations = check_trace(config, traces);
    for (const auto& v : violations) std::cerr << "violation: " << v.describe() << "\n";
    if (!violations.empty()) return kFailure;
  }
  return kOk;
}

int cmd_check(const TraceOptions& opt) {
  using namespace boidsense;
  const LoadedTrace loaded = parse_trace(read_file(opt.trace_path));
  const auto violations = check_trace(loaded.config, loaded.traces);
  for (const auto& v : violations) std::cerr << "violation: " << v.describe() << "\n";
  std::cout << loaded.traces.size() << " ticks checked, " << violations.size() << " violations\n";
  return violations.empty() ? kOk : kFailure;
}

int cmd_metrics(const TraceOptions& opt) {
  using namespace boidsense;
  const LoadedTrace loaded = parse_trace(read_file(opt.trace_path));
  const SimConfig& config = loaded.config;
  emit(opt.out_path, export_metrics(compute_metrics(loaded.traces, config.flock_params, config.bounds)));
  if (!opt.detections_path.empty()) {
    emit(opt.detections_path, export_detection_summary(detection_summary(loaded.traces)));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boids flock monitored by a proximity-sensor network"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Execute a scenario");
  run->add_option("config", run_opt.config_path, "Scenario file")->required();
  run->add_option("--trace", run_opt.trace_path, "Write the trace to PATH");
  run->add_option("--format", run_opt.format, "Trace format")->check(CLI::IsMember({"csv", "jsonl"}));
  run->add_option("--metrics", run_opt.metrics_path, "Write per-tick metrics CSV to PATH");
  run->add_option("--detections", run_opt.detections_path, "Write per-sensor detection totals to PATH");
  auto* plot = run->add_option("--plot", run_opt.plot_path, "Write an SVG plot to PATH");
  run->add_option("--style", run_opt.style, "Plot style")
      ->check(CLI::IsMember({"tracks", "snapshot"}))
      ->needs(plot);

  TraceOptions check_opt;
  auto* check = app.add_subcommand("check", "Re-validate every invariant over a stored trace");
  check->add_option("trace", check_opt.trace_path, "Trace file")->required();

  TraceOptions metrics_opt;
  auto* metrics = app.add_subcommand("metrics", "Recompute per-tick metrics from a trace");
  metrics->add_option("trace", metrics_opt.trace_path, "Trace file")->required();
  metrics->add_option("--out", metrics_opt.out_path, "Write metrics CSV to PATH (default stdout)");
  metrics->add_option("--detections", metrics_opt.detections_path, "Write per-sensor detection totals to PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*check) return cmd_check(check_opt);
    if (*metrics) return cmd_metrics(metrics_opt);
  } catch (const boidsense::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const boidsense::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
