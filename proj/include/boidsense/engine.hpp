#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "boidsense/core.hpp"
#include "boidsense/errors.hpp"
#include "boidsense/flocking.hpp"
#include "boidsense/sensing.hpp"

namespace boidsense {

enum class InvariantMode { enforce, record, off };

std::string_view to_string(InvariantMode mode);
std::string_view to_string(Topology topology);

struct SimConfig {
  WorldBounds bounds;
  FlockParams flock_params;
  std::int64_t n_boids = 0;
  std::int64_t n_sensors = 25;
  double sensor_radius = 5.0;
  std::uint64_t seed = 0;
  std::int64_t ticks = 1000;
  InvariantMode invariant_mode = InvariantMode::enforce;

  bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError naming the first field that breaks a rule.
void validate(const SimConfig& config);

enum class EntityKind { boid, sensor };

std::string_view to_string(EntityKind kind);

/// One failed state predicate. `predicate` is a stable dotted name such as
/// "HeadedBoid.heading_range".
struct ViolationReport {
  std::int64_t tick = 0;
  EntityKind kind = EntityKind::boid;
  std::int64_t entity_id = 0;
  std::string predicate;
  std::string detail;

  std::string describe() const;
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(ViolationReport report)
      : Error("invariant violated: " + report.describe()), report_(std::move(report)) {}

  const ViolationReport& report() const noexcept { return report_; }

 private:
  ViolationReport report_;
};

struct SimulationState {
  SimConfig config;
  std::int64_t tick = 0;
  std::vector<BoidState> boids;
  /// Parallel to `boids`: the rule that produced each boid's current heading.
  std::vector<TurnDecision> decisions;
  std::vector<SensorNode> sensors;
  std::vector<DetectionRecord> detections;
  /// Deployment-time sensor positions, parallel to `sensors`.
  std::vector<Position> sensor_origins;
  /// Violations seen so far in InvariantMode::record.
  std::vector<ViolationReport> recorded_violations;
};

/// Full per-tick record. Boids and decisions are ordered by boid id;
/// detections by sensor order.
struct TickTrace {
  std::int64_t tick = 0;
  std::vector<BoidState> boids;
  std::vector<DetectionRecord> detections;
  std::vector<TurnDecision> decisions;
  /// Sensor positions for this tick, parallel to `detections`.
  std::vector<Position> sensor_positions;
};

SimulationState init_simulation(const SimConfig& config);

/// Synchronous two-phase step: every boid decides against the same
/// start-of-tick snapshot, then all headings are applied and all boids move.
/// Sensors then read the post-move positions.
SimulationState tick(SimulationState state);

std::vector<ViolationReport> check_invariants(const SimulationState& state);

TickTrace snapshot(const SimulationState& state);

/// Initial state plus `config.ticks` steps, ticks + 1 rows in all.
std::vector<TickTrace> run(const SimConfig& config);

/// Continues an existing state for `ticks` steps; the first row is `state` itself.
std::vector<TickTrace> run_from(SimulationState state, std::int64_t ticks);

/// Rebuilds the state a trace row describes (sensor origins from `first`).
SimulationState state_from_trace(const SimConfig& config, const TickTrace& row,
                                 const TickTrace& first);

/// Per-row check_invariants plus cross-row rules: tick indices step by one,
/// boid and sensor counts stay constant, sensors never move.
std::vector<ViolationReport> check_trace(const SimConfig& config,
                                         const std::vector<TickTrace>& traces);

}  // namespace boidsense
