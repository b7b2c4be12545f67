#pragma once

// Trace and metrics serialization.
//
// CSV traces start with `# key = value` metadata lines (generator id and the
// fully resolved scenario), followed by the header
//
//   tick,entity_kind,entity_id,x,y,heading,count,rule
//
// and one row per boid and per sensor per tick. Reals use fixed notation with
// six decimals; sensors leave heading and rule empty, boids leave count empty.
//
// JSONL traces carry a {"metadata": ...} object on the first line and one
// object per tick after it.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boidsense/config.hpp"
#include "boidsense/engine.hpp"
#include "boidsense/metrics.hpp"

namespace boidsense {

struct LoadedTrace {
  SimConfig config;
  std::string generator;
  std::vector<TickTrace> traces;
};

std::string export_trace(std::span<const TickTrace> traces, TraceFormat format,
                         const SimConfig& config);

/// Accepts either format; the first non-blank character decides.
/// Decisions read from CSV recover `turn` from consecutive headings.
LoadedTrace parse_trace(std::string_view text);

std::string export_metrics(std::span<const TickMetrics> metrics);
std::string export_detection_summary(std::span<const SensorTotals> totals);

/// Fixed six-decimal rendering used by every exported real.
std::string format_fixed6(double value);

/// Heading rendering: like format_fixed6, but a value that would print as
/// 360.000000 prints as 0.000000 so valid headings stay valid on reload.
std::string format_heading6(double degrees);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace boidsense
