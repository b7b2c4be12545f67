#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "boidsense/core.hpp"

namespace boidsense {

enum class Rule { none, separate, align_cohere };

std::string_view to_string(Rule rule);
std::optional<Rule> rule_from_string(std::string_view text);

/// Which branch of the flock rule fired for one boid in one tick, and the
/// signed heading change it produced. rule == none implies turn == 0.
struct TurnDecision {
  Rule rule = Rule::none;
  double turn = 0.0;

  bool operator==(const TurnDecision&) const = default;
};

struct FlockStep {
  Heading heading;
  TurnDecision decision;
};

/// Vector-sum magnitude below which a circular mean is treated as undefined.
inline constexpr double kCircularMeanEpsilon = 1e-9;

/// Every other boid within `vision` (inclusive), ordered by id.
std::vector<BoidState> find_flockmates(const BoidState& self, std::span<const BoidState> all,
                                       const FlockParams& params, const WorldBounds& bounds);

/// Closest flockmate; equal distances resolve to the smallest id.
std::optional<BoidState> find_nearest_neighbor(const BoidState& self,
                                               std::span<const BoidState> flockmates,
                                               const WorldBounds& bounds);

/// Limits the magnitude of a turn to `max_turn` and keeps its sign.
double clamp_turn(double desired, double max_turn);

double towards_turn(const BoidState& self, Heading target);
double away_turn(const BoidState& self, Heading other);

Heading separate(const BoidState& self, const BoidState& nearest, const FlockParams& params);

/// Circular mean of the flockmates' headings. When the unit vectors cancel
/// the heading of the smallest-id flockmate is returned instead.
Heading average_flockmate_heading(std::span<const BoidState> flockmates);

Heading align(const BoidState& self, Heading avg_heading, const FlockParams& params);

/// Turns towards the circular mean of the bearings to each flockmate.
///
/// Flockmates sharing self's exact position have no bearing and are skipped;
/// if none remain the heading is returned unchanged. If the remaining bearings
/// cancel, the bearing to the smallest-id flockmate among them is used.
Heading cohere(const BoidState& self, std::span<const BoidState> flockmates,
               const FlockParams& params, const WorldBounds& bounds);

/// Full flock rule against a precomputed flockmate set (ordered by id).
FlockStep flock_step_with(const BoidState& self, std::span<const BoidState> flockmates,
                          const FlockParams& params, const WorldBounds& bounds);

FlockStep flock_step(const BoidState& self, std::span<const BoidState> all,
                     const FlockParams& params, const WorldBounds& bounds);

/// Moves `speed` units along the current heading, then wraps or clamps.
Position advance(const BoidState& self, const FlockParams& params, const WorldBounds& bounds);

}  // namespace boidsense
