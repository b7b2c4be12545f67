#include "boidsense/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "boidsense/neighbor_grid.hpp"

namespace boidsense {

double polarization(std::span<const BoidState> boids) {
  if (boids.empty()) throw PreconditionViolation("polarization of an empty boid set");
  Vec2<double> sum = Vec2<double>::Zero();
  for (const BoidState& b : boids) sum += heading_vector(b.heading.degrees);
  return std::min(1.0, sum.norm() / double(boids.size()));
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<BoidId>> vision_components(std::span<const BoidState> boids,
                                                   const FlockParams& params,
                                                   const WorldBounds& bounds) {
  const NeighborGrid grid(boids, params.vision, bounds);
  DisjointSets sets(boids.size());
  for (std::size_t i = 0; i < boids.size(); ++i) {
    for (std::size_t j : grid.within(boids[i].pos)) sets.unite(i, j);
  }

  std::map<std::size_t, std::vector<BoidId>> by_root;
  for (std::size_t i = 0; i < boids.size(); ++i) by_root[sets.find(i)].push_back(boids[i].id);
  std::vector<std::vector<BoidId>> components;
  components.reserve(by_root.size());
  for (auto& [root, ids] : by_root) {
    std::sort(ids.begin(), ids.end());
    components.push_back(std::move(ids));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

TickMetrics compute_tick_metrics(const TickTrace& row, const FlockParams& params,
                                 const WorldBounds& bounds) {
  TickMetrics m;
  m.tick = row.tick;
  m.polarization = polarization(row.boids);

  const NeighborGrid grid(row.boids, params.vision, bounds);
  std::size_t mates = 0;
  for (const BoidState& b : row.boids) mates += grid.flockmates(b).size();
  m.mean_flockmates = double(mates) / double(row.boids.size());

  std::map<BoidId, const BoidState*> by_id;
  for (const BoidState& b : row.boids) by_id[b.id] = &b;
  const auto components = vision_components(row.boids, params, bounds);
  m.n_components = static_cast<std::int64_t>(components.size());
  double weighted = 0.0;
  std::vector<BoidState> members;
  for (const auto& ids : components) {
    members.clear();
    for (BoidId id : ids) members.push_back(*by_id.at(id));
    weighted += polarization(members) * double(members.size());
  }
  m.mean_component_polarization = weighted / double(row.boids.size());
  return m;
}

std::vector<TickMetrics> compute_metrics(std::span<const TickTrace> traces,
                                         const FlockParams& params, const WorldBounds& bounds) {
  std::vector<TickMetrics> out;
  out.reserve(traces.size());
  for (const TickTrace& row : traces) out.push_back(compute_tick_metrics(row, params, bounds));
  return out;
}

std::vector<SensorTotals> detection_summary(std::span<const TickTrace> traces) {
  if (traces.empty()) throw PreconditionViolation("detection summary of an empty trace");
  std::vector<SensorTotals> totals;
  std::map<SensorId, std::size_t> slot;
  for (const DetectionRecord& d : traces.front().detections) {
    slot[d.sensor_id] = totals.size();
    totals.push_back({d.sensor_id, 0, 0});
  }
  for (const TickTrace& row : traces) {
    for (const DetectionRecord& d : row.detections) {
      auto it = slot.find(d.sensor_id);
      if (it == slot.end()) {
        it = slot.emplace(d.sensor_id, totals.size()).first;
        totals.push_back({d.sensor_id, 0, 0});
      }
      SensorTotals& t = totals[it->second];
      if (d.detecting) ++t.detection_ticks;
      t.cumulative_count += d.count;
    }
  }
  return totals;
}

}  // namespace boidsense
