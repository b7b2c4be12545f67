#pragma once

#include <span>
#include <string>

#include "boidsense/config.hpp"
#include "boidsense/engine.hpp"

namespace boidsense {

/// SVG rendering of a run, world units in a viewBox spanning the bounds
/// (north up).
///
/// tracks: one <g class="track"> per boid holding its path as polylines; a
/// new polyline starts wherever a step jumps more than half the world width
/// or height, i.e. at torus seams.
/// snapshot: final-tick boids plus sensor circles, class "detecting" (dark)
/// when the final count is positive and "idle" (light) otherwise.
std::string plot_tracks(std::span<const TickTrace> traces, PlotStyle style,
                        const WorldBounds& bounds);

}  // namespace boidsense
