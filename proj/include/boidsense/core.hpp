#pragma once

// Domain types and the geometric / angular primitives shared by every module.
//
// Heading convention is compass style: 0 degrees points along +y (north) and
// angles grow clockwise, so a unit heading vector is (sin h, cos h).

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "boidsense/errors.hpp"

namespace boidsense {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Position = Vec2<double>;

enum class Topology { torus, bounded };

template <typename Scalar>
struct Bounds {
  Scalar min_x = Scalar(-35);
  Scalar max_x = Scalar(35);
  Scalar min_y = Scalar(-35);
  Scalar max_y = Scalar(35);
  Topology topology = Topology::torus;

  Scalar width() const { return max_x - min_x; }
  Scalar height() const { return max_y - min_y; }
  bool valid() const { return min_x < max_x && min_y < max_y; }

  /// Position invariant: min <= coordinate <= max on both axes.
  bool contains(const Vec2<Scalar>& p) const {
    return p.x() >= min_x && p.x() <= max_x && p.y() >= min_y && p.y() <= max_y;
  }

  bool operator==(const Bounds&) const = default;
};

using WorldBounds = Bounds<double>;

/// Compass heading in degrees. Valid values lie in [0, 360); use
/// normalize_heading to build one from an arbitrary angle.
struct Heading {
  double degrees = 0.0;

  bool valid() const { return degrees >= 0.0 && degrees < 360.0; }
  bool operator==(const Heading&) const = default;
};

using BoidId = std::int64_t;

struct BoidState {
  BoidId id = 0;
  Position pos = Position::Zero();
  Heading heading;

  bool operator==(const BoidState&) const = default;
};

struct FlockParams {
  double min_separation = 1.0;
  double max_align_turn = 5.0;
  double max_cohere_turn = 3.0;
  double max_separate_turn = 1.5;
  double vision = 3.0;
  double speed = 1.0;

  bool operator==(const FlockParams&) const = default;
};

template <typename Scalar>
constexpr Scalar degrees_to_radians(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar radians_to_degrees(Scalar rad) {
  return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

/// Reduces an angle into [0, 360).
template <typename Scalar>
Scalar normalize_degrees(Scalar raw) {
  if (!std::isfinite(raw)) throw InvalidAngle("angle is not finite");
  Scalar r = std::fmod(raw, Scalar(360));
  if (r < Scalar(0)) r += Scalar(360);
  // fmod of a tiny negative value can round back up to exactly 360.
  if (r >= Scalar(360)) r -= Scalar(360);
  return r;
}

inline Heading normalize_heading(double raw) { return Heading{normalize_degrees(raw)}; }

/// Minimal signed angular difference a - b, in (-180, 180].
template <typename Scalar>
Scalar subtract_degrees(Scalar a, Scalar b) {
  Scalar d = std::fmod(a - b, Scalar(360));
  if (d > Scalar(180)) d -= Scalar(360);
  if (d <= Scalar(-180)) d += Scalar(360);
  return d;
}

inline double subtract_heading(Heading a, Heading b) { return subtract_degrees(a.degrees, b.degrees); }

/// Unit vector for a compass heading.
template <typename Scalar>
Vec2<Scalar> heading_vector(Scalar degrees) {
  const Scalar rad = degrees_to_radians(degrees);
  return Vec2<Scalar>(std::sin(rad), std::cos(rad));
}

/// Compass heading of a direction vector. The zero vector maps to 0.
template <typename Scalar>
Scalar vector_heading(const Vec2<Scalar>& v) {
  return normalize_degrees(radians_to_degrees(std::atan2(v.x(), v.y())));
}

namespace detail {

template <typename Scalar>
Scalar wrap_axis(Scalar v, Scalar lo, Scalar hi) {
  const Scalar span = hi - lo;
  Scalar r = v - span * std::floor((v - lo) / span);
  if (r >= hi) r = lo;
  if (r < lo) r = lo;
  return r;
}

template <typename Scalar>
Scalar minimal_offset(Scalar d, Scalar span) {
  if (d > span / Scalar(2)) return d - span;
  if (d < -span / Scalar(2)) return d + span;
  return d;
}

}  // namespace detail

/// Brings a candidate position back into the world: modular wrap into
/// [min, max) on a torus, clamp into [min, max] otherwise.
template <typename Scalar>
Vec2<Scalar> wrap_position(const Vec2<Scalar>& p, const Bounds<Scalar>& bounds) {
  if (bounds.topology == Topology::torus) {
    return Vec2<Scalar>(detail::wrap_axis(p.x(), bounds.min_x, bounds.max_x),
                        detail::wrap_axis(p.y(), bounds.min_y, bounds.max_y));
  }
  return Vec2<Scalar>(std::clamp(p.x(), bounds.min_x, bounds.max_x),
                      std::clamp(p.y(), bounds.min_y, bounds.max_y));
}

/// Displacement from `from` to `to`; on a torus each axis takes the shortest
/// wrapped offset.
template <typename Scalar>
Vec2<Scalar> displacement(const Vec2<Scalar>& from, const Vec2<Scalar>& to,
                          const Bounds<Scalar>& bounds) {
  Vec2<Scalar> d = to - from;
  if (bounds.topology == Topology::torus) {
    d.x() = detail::minimal_offset(d.x(), bounds.width());
    d.y() = detail::minimal_offset(d.y(), bounds.height());
  }
  return d;
}

template <typename Scalar>
Scalar distance(const Vec2<Scalar>& a, const Vec2<Scalar>& b, const Bounds<Scalar>& bounds) {
  const Vec2<Scalar> d = displacement(a, b, bounds);
  return std::sqrt(d.x() * d.x() + d.y() * d.y());
}

/// Compass bearing from `from` towards `to`.
template <typename Scalar>
Scalar bearing(const Vec2<Scalar>& from, const Vec2<Scalar>& to, const Bounds<Scalar>& bounds) {
  return vector_heading(displacement(from, to, bounds));
}

}  // namespace boidsense
