#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boidsense/core.hpp"
#include "boidsense/engine.hpp"

namespace boidsense {

struct TickMetrics {
  std::int64_t tick = 0;
  double polarization = 0.0;
  double mean_flockmates = 0.0;
  std::int64_t n_components = 0;
  /// Size-weighted mean of each vision component's polarization.
  double mean_component_polarization = 0.0;
};

/// Magnitude of the mean unit heading vector, in [0, 1].
double polarization(std::span<const BoidState> boids);

/// Connected components of the graph joining boids within `vision` of each
/// other. Each component lists boid ids in ascending order; components are
/// ordered by their smallest id.
std::vector<std::vector<BoidId>> vision_components(std::span<const BoidState> boids,
                                                   const FlockParams& params,
                                                   const WorldBounds& bounds);

TickMetrics compute_tick_metrics(const TickTrace& row, const FlockParams& params,
                                 const WorldBounds& bounds);

std::vector<TickMetrics> compute_metrics(std::span<const TickTrace> traces,
                                         const FlockParams& params, const WorldBounds& bounds);

struct SensorTotals {
  SensorId sensor_id = 0;
  std::int64_t detection_ticks = 0;
  std::int64_t cumulative_count = 0;

  bool operator==(const SensorTotals&) const = default;
};

/// Per-sensor totals over all rows, in the sensor order of the first row.
std::vector<SensorTotals> detection_summary(std::span<const TickTrace> traces);

}  // namespace boidsense
