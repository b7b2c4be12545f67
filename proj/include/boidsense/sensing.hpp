#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "boidsense/core.hpp"

namespace boidsense {

using SensorId = std::int64_t;

/// Fixed proximity sensor. `count_nearby_boids` holds the latest reading.
struct SensorNode {
  SensorId id = 0;
  Position pos = Position::Zero();
  double radius = 5.0;
  std::int64_t count_nearby_boids = 0;

  bool operator==(const SensorNode&) const = default;
};

struct DetectionRecord {
  std::int64_t tick = 0;
  SensorId sensor_id = 0;
  std::int64_t count = 0;
  bool detecting = false;

  bool operator==(const DetectionRecord&) const = default;
};

/// `n` sensors placed uniformly over the world, ids 0..n-1.
std::vector<SensorNode> deploy_sensors(std::int64_t n, double radius, const WorldBounds& bounds,
                                       std::uint64_t seed);

/// Boids within the sensing radius, boundary inclusive.
std::int64_t count_nearby_boids(const SensorNode& sensor, std::span<const BoidState> boids,
                                const WorldBounds& bounds);

/// One record per sensor, in sensor order; refreshes each sensor's count.
std::vector<DetectionRecord> sense_all(std::span<SensorNode> sensors,
                                       std::span<const BoidState> boids, std::int64_t tick,
                                       const WorldBounds& bounds);

}  // namespace boidsense
