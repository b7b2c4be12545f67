#include "boidsense/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "boidsense/neighbor_grid.hpp"
#include "boidsense/random.hpp"

namespace boidsense {

std::string_view to_string(InvariantMode mode) {
  switch (mode) {
    case InvariantMode::record:
      return "record";
    case InvariantMode::off:
      return "off";
    case InvariantMode::enforce:
      break;
  }
  return "enforce";
}

std::string_view to_string(Topology topology) {
  return topology == Topology::torus ? "torus" : "bounded";
}

std::string_view to_string(EntityKind kind) { return kind == EntityKind::boid ? "boid" : "sensor"; }

std::string ViolationReport::describe() const {
  std::string s = "tick " + std::to_string(tick) + ", " + std::string(to_string(kind)) + " " +
                  std::to_string(entity_id) + ", " + predicate;
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw ConfigError(field, rule);
}

}  // namespace

void validate(const SimConfig& c) {
  const WorldBounds& b = c.bounds;
  require(finite(b.min_x) && finite(b.max_x), "min_x", "bounds must be finite");
  require(finite(b.min_y) && finite(b.max_y), "min_y", "bounds must be finite");
  require(b.min_x < b.max_x, "max_x", "min_x < max_x");
  require(b.min_y < b.max_y, "max_y", "min_y < max_y");

  const FlockParams& p = c.flock_params;
  require(finite(p.vision) && p.vision >= 0.0, "vision", "vision >= 0");
  require(p.vision <= 360.0, "vision", "vision <= 360");
  require(finite(p.min_separation) && p.min_separation >= 0.0, "min_separation",
          "min_separation >= 0");
  require(p.min_separation < p.vision, "min_separation", "min_separation < vision");
  require(finite(p.max_align_turn) && p.max_align_turn >= 0.0, "max_align_turn",
          "max_align_turn >= 0");
  require(finite(p.max_cohere_turn) && p.max_cohere_turn >= 0.0, "max_cohere_turn",
          "max_cohere_turn >= 0");
  require(finite(p.max_separate_turn) && p.max_separate_turn >= 0.0, "max_separate_turn",
          "max_separate_turn >= 0");
  require(finite(p.speed) && p.speed > 0.0, "speed", "speed > 0");

  require(c.n_boids >= 0, "n_boids", "n_boids >= 0");
  require(c.ticks >= 0, "ticks", "ticks >= 0");
  require(c.ticks == 0 || c.n_boids >= 1, "n_boids", "n_boids >= 1 when ticks >= 1");
  require(c.n_sensors >= 0, "n_sensors", "n_sensors >= 0");
  require(finite(c.sensor_radius) && c.sensor_radius > 0.0, "sensor_radius", "sensor_radius > 0");
}

namespace {

void sense(SimulationState& state) {
  state.detections = sense_all(state.sensors, state.boids, state.tick, state.config.bounds);
}

void apply_invariant_mode(SimulationState& state) {
  if (state.config.invariant_mode == InvariantMode::off) return;
  auto violations = check_invariants(state);
  if (violations.empty()) return;
  if (state.config.invariant_mode == InvariantMode::enforce) {
    throw InvariantViolation(std::move(violations.front()));
  }
  state.recorded_violations.insert(state.recorded_violations.end(),
                                   std::make_move_iterator(violations.begin()),
                                   std::make_move_iterator(violations.end()));
}

}  // namespace

SimulationState init_simulation(const SimConfig& config) {
  validate(config);

  SimulationState state;
  state.config = config;
  const WorldBounds& b = config.bounds;

  RandomStream rng(substream_seed(config.seed, "boid-init"));
  state.boids.reserve(static_cast<std::size_t>(config.n_boids));
  for (std::int64_t i = 0; i < config.n_boids; ++i) {
    const double x = rng.uniform(b.min_x, b.max_x);
    const double y = rng.uniform(b.min_y, b.max_y);
    const double h = rng.uniform(0.0, 360.0);
    state.boids.push_back({i, wrap_position(Position(x, y), b), normalize_heading(h)});
  }
  state.decisions.assign(state.boids.size(), TurnDecision{});

  state.sensors = deploy_sensors(config.n_sensors, config.sensor_radius, b,
                                 substream_seed(config.seed, "sensor-deploy"));
  for (const SensorNode& s : state.sensors) state.sensor_origins.push_back(s.pos);

  sense(state);
  apply_invariant_mode(state);
  return state;
}

SimulationState tick(SimulationState state) {
  const FlockParams& params = state.config.flock_params;
  const WorldBounds& bounds = state.config.bounds;

  // Phase 1: decide against the immutable start-of-tick snapshot.
  const std::vector<BoidState> start = state.boids;
  const NeighborGrid grid(start, params.vision, bounds);
  std::vector<FlockStep> steps;
  steps.reserve(start.size());
  for (const BoidState& self : start) {
    steps.push_back(flock_step_with(self, grid.flockmates(self), params, bounds));
  }

  // Phase 2: apply headings, then move.
  for (std::size_t i = 0; i < state.boids.size(); ++i) {
    BoidState& boid = state.boids[i];
    boid.heading = steps[i].heading;
    boid.pos = advance(boid, params, bounds);
    state.decisions[i] = steps[i].decision;
  }

  ++state.tick;
  sense(state);
  apply_invariant_mode(state);
  return state;
}

std::vector<ViolationReport> check_invariants(const SimulationState& state) {
  std::vector<ViolationReport> out;
  const std::int64_t t = state.tick;
  const WorldBounds& bounds = state.config.bounds;
  auto report = [&](EntityKind kind, std::int64_t id, const char* predicate, std::string detail) {
    out.push_back({t, kind, id, predicate, std::move(detail)});
  };

  std::unordered_set<BoidId> seen;
  for (const BoidState& b : state.boids) {
    if (!seen.insert(b.id).second) report(EntityKind::boid, b.id, "BOID.unique_id", "duplicate id");
    if (!b.heading.valid()) {
      report(EntityKind::boid, b.id, "HeadedBoid.heading_range",
             "heading " + std::to_string(b.heading.degrees) + " outside [0, 360)");
    }
    if (!bounds.contains(b.pos)) {
      report(EntityKind::boid, b.id, "Location.within_bounds",
             "position (" + std::to_string(b.pos.x()) + ", " + std::to_string(b.pos.y()) + ")");
    }
  }

  const auto n_boids = static_cast<std::int64_t>(state.boids.size());
  for (std::size_t i = 0; i < state.sensors.size(); ++i) {
    const SensorNode& s = state.sensors[i];
    if (s.count_nearby_boids < 0 || s.count_nearby_boids > n_boids) {
      report(EntityKind::sensor, s.id, "Sensor.count_range",
             "count " + std::to_string(s.count_nearby_boids) + " outside [0, " +
                 std::to_string(n_boids) + "]");
    }
    if (!bounds.contains(s.pos)) report(EntityKind::sensor, s.id, "Location.within_bounds", "");
    if (i < state.sensor_origins.size() && state.sensor_origins[i] != s.pos) {
      report(EntityKind::sensor, s.id, "Sensor.immobile", "position changed since deployment");
    }
  }
  for (const DetectionRecord& d : state.detections) {
    if (d.detecting != (d.count > 0)) {
      report(EntityKind::sensor, d.sensor_id, "DetectionRecord.detecting", "detecting != (count > 0)");
    }
  }
  return out;
}

TickTrace snapshot(const SimulationState& state) {
  std::vector<std::size_t> order(state.boids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return state.boids[a].id < state.boids[b].id;
  });

  TickTrace row;
  row.tick = state.tick;
  row.boids.reserve(order.size());
  row.decisions.reserve(order.size());
  for (std::size_t i : order) {
    row.boids.push_back(state.boids[i]);
    row.decisions.push_back(state.decisions[i]);
  }
  row.detections = state.detections;
  for (const SensorNode& s : state.sensors) row.sensor_positions.push_back(s.pos);
  return row;
}

std::vector<TickTrace> run_from(SimulationState state, std::int64_t ticks) {
  std::vector<TickTrace> traces;
  traces.reserve(static_cast<std::size_t>(ticks) + 1);
  traces.push_back(snapshot(state));
  for (std::int64_t i = 0; i < ticks; ++i) {
    state = tick(std::move(state));
    traces.push_back(snapshot(state));
  }
  return traces;
}

std::vector<TickTrace> run(const SimConfig& config) {
  return run_from(init_simulation(config), config.ticks);
}

SimulationState state_from_trace(const SimConfig& config, const TickTrace& row,
                                 const TickTrace& first) {
  SimulationState state;
  state.config = config;
  state.tick = row.tick;
  state.boids = row.boids;
  state.decisions = row.decisions;
  state.decisions.resize(state.boids.size());
  state.detections = row.detections;
  for (std::size_t i = 0; i < row.detections.size(); ++i) {
    SensorNode s;
    s.id = row.detections[i].sensor_id;
    s.pos = i < row.sensor_positions.size() ? row.sensor_positions[i] : Position::Zero();
    s.radius = config.sensor_radius;
    s.count_nearby_boids = row.detections[i].count;
    state.sensors.push_back(s);
  }
  state.sensor_origins = first.sensor_positions;
  return state;
}

std::vector<ViolationReport> check_trace(const SimConfig& config,
                                         const std::vector<TickTrace>& traces) {
  std::vector<ViolationReport> out;
  if (traces.empty()) return out;
  const TickTrace& first = traces.front();
  for (std::size_t r = 0; r < traces.size(); ++r) {
    const TickTrace& row = traces[r];
    auto found = check_invariants(state_from_trace(config, row, first));
    out.insert(out.end(), found.begin(), found.end());
    if (r == 0) continue;
    const TickTrace& prev = traces[r - 1];
    if (row.tick != prev.tick + 1) {
      out.push_back({row.tick, EntityKind::boid, -1, "TickTrace.tick_sequence",
                     "tick follows " + std::to_string(prev.tick)});
    }
    if (row.boids.size() != first.boids.size()) {
      out.push_back({row.tick, EntityKind::boid, -1, "TickTrace.boid_population",
                     std::to_string(row.boids.size()) + " boids, expected " +
                         std::to_string(first.boids.size())});
    }
    if (row.detections.size() != first.detections.size()) {
      out.push_back({row.tick, EntityKind::sensor, -1, "TickTrace.sensor_population", ""});
    }
  }
  return out;
}

}  // namespace boidsense
