#include "boidsense/flocking.hpp"

#include <algorithm>
#include <cmath>

namespace boidsense {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::separate:
      return "separate";
    case Rule::align_cohere:
      return "align_cohere";
    case Rule::none:
      break;
  }
  return "none";
}

std::optional<Rule> rule_from_string(std::string_view text) {
  if (text == "none") return Rule::none;
  if (text == "separate") return Rule::separate;
  if (text == "align_cohere") return Rule::align_cohere;
  return std::nullopt;
}

std::vector<BoidState> find_flockmates(const BoidState& self, std::span<const BoidState> all,
                                       const FlockParams& params, const WorldBounds& bounds) {
  std::vector<BoidState> mates;
  for (const BoidState& other : all) {
    if (other.id == self.id) continue;
    if (distance(self.pos, other.pos, bounds) <= params.vision) mates.push_back(other);
  }
  std::sort(mates.begin(), mates.end(),
            [](const BoidState& a, const BoidState& b) { return a.id < b.id; });
  return mates;
}

std::optional<BoidState> find_nearest_neighbor(const BoidState& self,
                                               std::span<const BoidState> flockmates,
                                               const WorldBounds& bounds) {
  std::optional<BoidState> nearest;
  double best = 0.0;
  for (const BoidState& mate : flockmates) {
    const double d = distance(self.pos, mate.pos, bounds);
    if (!nearest || d < best || (d == best && mate.id < nearest->id)) {
      nearest = mate;
      best = d;
    }
  }
  return nearest;
}

double clamp_turn(double desired, double max_turn) {
  return std::copysign(std::min(std::abs(desired), max_turn), desired);
}

double towards_turn(const BoidState& self, Heading target) {
  return subtract_heading(target, self.heading);
}

double away_turn(const BoidState& self, Heading other) {
  return subtract_heading(self.heading, other);
}

Heading separate(const BoidState& self, const BoidState& nearest, const FlockParams& params) {
  const double turn = clamp_turn(away_turn(self, nearest.heading), params.max_separate_turn);
  return normalize_heading(self.heading.degrees + turn);
}

namespace {

const BoidState& smallest_id(std::span<const BoidState> boids) {
  return *std::min_element(boids.begin(), boids.end(),
                           [](const BoidState& a, const BoidState& b) { return a.id < b.id; });
}

}  // namespace

Heading average_flockmate_heading(std::span<const BoidState> flockmates) {
  if (flockmates.empty()) throw PreconditionViolation("average heading of an empty flockmate set");
  Vec2<double> sum = Vec2<double>::Zero();
  for (const BoidState& mate : flockmates) sum += heading_vector(mate.heading.degrees);
  if (sum.norm() < kCircularMeanEpsilon) return smallest_id(flockmates).heading;
  return Heading{vector_heading(sum)};
}

Heading align(const BoidState& self, Heading avg_heading, const FlockParams& params) {
  const double turn = clamp_turn(towards_turn(self, avg_heading), params.max_align_turn);
  return normalize_heading(self.heading.degrees + turn);
}

Heading cohere(const BoidState& self, std::span<const BoidState> flockmates,
               const FlockParams& params, const WorldBounds& bounds) {
  if (flockmates.empty()) throw PreconditionViolation("cohere with an empty flockmate set");

  Vec2<double> sum = Vec2<double>::Zero();
  const BoidState* fallback = nullptr;
  for (const BoidState& mate : flockmates) {
    const Vec2<double> d = displacement(self.pos, mate.pos, bounds);
    if (d.x() == 0.0 && d.y() == 0.0) continue;
    sum += heading_vector(vector_heading(d));
    if (fallback == nullptr || mate.id < fallback->id) fallback = &mate;
  }
  if (fallback == nullptr) return self.heading;

  const double mean_bearing = sum.norm() < kCircularMeanEpsilon
                                  ? bearing(self.pos, fallback->pos, bounds)
                                  : vector_heading(sum);
  const double turn =
      clamp_turn(towards_turn(self, Heading{mean_bearing}), params.max_cohere_turn);
  return normalize_heading(self.heading.degrees + turn);
}

FlockStep flock_step_with(const BoidState& self, std::span<const BoidState> flockmates,
                          const FlockParams& params, const WorldBounds& bounds) {
  const auto nearest = find_nearest_neighbor(self, flockmates, bounds);
  if (!nearest) return {self.heading, {Rule::none, 0.0}};

  Heading next;
  Rule rule;
  if (distance(self.pos, nearest->pos, bounds) <= params.min_separation) {
    next = separate(self, *nearest, params);
    rule = Rule::separate;
  } else {
    BoidState aligned = self;
    aligned.heading = align(self, average_flockmate_heading(flockmates), params);
    next = cohere(aligned, flockmates, params, bounds);
    rule = Rule::align_cohere;
  }
  return {next, {rule, subtract_heading(next, self.heading)}};
}

FlockStep flock_step(const BoidState& self, std::span<const BoidState> all,
                     const FlockParams& params, const WorldBounds& bounds) {
  const auto mates = find_flockmates(self, all, params, bounds);
  return flock_step_with(self, mates, params, bounds);
}

Position advance(const BoidState& self, const FlockParams& params, const WorldBounds& bounds) {
  const Position moved = self.pos + params.speed * heading_vector(self.heading.degrees);
  return wrap_position(moved, bounds);
}

}  // namespace boidsense
