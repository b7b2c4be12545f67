#include "boidsense/sensing.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "boidsense/errors.hpp"
#include "boidsense/neighbor_grid.hpp"
#include "boidsense/random.hpp"

namespace boidsense {

std::vector<SensorNode> deploy_sensors(std::int64_t n, double radius, const WorldBounds& bounds,
                                       std::uint64_t seed) {
  if (n < 0) throw ConfigError("n_sensors", "must be >= 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("sensor_radius", "must be > 0");

  RandomStream rng(seed);
  std::vector<SensorNode> sensors;
  sensors.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = rng.uniform(bounds.min_x, bounds.max_x);
    const double y = rng.uniform(bounds.min_y, bounds.max_y);
    sensors.push_back({i, wrap_position(Position(x, y), bounds), radius, 0});
  }
  return sensors;
}

std::int64_t count_nearby_boids(const SensorNode& sensor, std::span<const BoidState> boids,
                                const WorldBounds& bounds) {
  std::int64_t n = 0;
  for (const BoidState& b : boids) {
    if (distance(sensor.pos, b.pos, bounds) <= sensor.radius) ++n;
  }
  return n;
}

std::vector<DetectionRecord> sense_all(std::span<SensorNode> sensors,
                                       std::span<const BoidState> boids, std::int64_t tick,
                                       const WorldBounds& bounds) {
  // Sensors normally share one radius; keep one grid per distinct radius.
  std::map<double, std::unique_ptr<NeighborGrid>> grids;
  std::vector<DetectionRecord> records;
  records.reserve(sensors.size());
  for (SensorNode& sensor : sensors) {
    auto& grid = grids[sensor.radius];
    if (!grid) grid = std::make_unique<NeighborGrid>(boids, sensor.radius, bounds);
    sensor.count_nearby_boids = static_cast<std::int64_t>(grid->count_within(sensor.pos));
    records.push_back({tick, sensor.id, sensor.count_nearby_boids, sensor.count_nearby_boids > 0});
  }
  return records;
}

}  // namespace boidsense
