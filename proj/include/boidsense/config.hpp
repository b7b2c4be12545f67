#pragma once

// Scenario documents: flat `key = value` lines, `#` starts a comment.
//
// Keys and defaults (all defaults except the bounds are calibration values):
//
//   n_boids            required
//   seed               required
//   ticks              1000
//   n_sensors          25
//   sensor_radius      5.0
//   min_x / max_x      -35 / 35
//   min_y / max_y      -35 / 35
//   topology           torus        (torus | bounded)
//   vision             3.0
//   min_separation     1.0
//   max_align_turn     5.0
//   max_cohere_turn    3.0
//   max_separate_turn  1.5
//   speed              1.0
//   invariant_mode     enforce      (enforce | record | off)
//
// Output keys, all optional: trace, trace_format (csv | jsonl), metrics,
// detections, plot, plot_style (tracks | snapshot).

#include <optional>
#include <string>
#include <string_view>

#include "boidsense/engine.hpp"

namespace boidsense {

enum class TraceFormat { csv, jsonl };
enum class PlotStyle { tracks, snapshot };

struct ScenarioFile {
  SimConfig config;
  std::optional<std::string> trace_path;
  std::optional<TraceFormat> trace_format;
  std::optional<std::string> metrics_path;
  std::optional<std::string> detections_path;
  std::optional<std::string> plot_path;
  std::optional<PlotStyle> plot_style;
};

/// Throws ParseError (with line) for malformed lines, unknown or repeated
/// keys and unreadable values; ConfigError for rule violations.
ScenarioFile parse_scenario(std::string_view text);

SimConfig parse_config(std::string_view text);

/// Every SimConfig key with its resolved value, one `key = value` per line,
/// values printed so that parsing them back is exact.
std::string serialize_config(const SimConfig& config);

std::optional<TraceFormat> trace_format_from_string(std::string_view text);
std::optional<PlotStyle> plot_style_from_string(std::string_view text);
std::string_view to_string(TraceFormat format);
std::string_view to_string(PlotStyle style);

}  // namespace boidsense
