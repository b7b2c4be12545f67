#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boidsense/core.hpp"

namespace boidsense {

/// Uniform bucket grid over boid positions for fixed-radius range queries.
///
/// Cells are at least `radius` wide, so every boid within `radius` of a query
/// point sits in the 3x3 block of cells around it. Worlds too small for a
/// 3x3 block (or a zero radius) fall back to a linear scan. The grid keeps a
/// view of `boids`; the span must outlive it.
class NeighborGrid {
 public:
  NeighborGrid(std::span<const BoidState> boids, double radius, const WorldBounds& bounds);

  /// Indices into the boid span with distance(p, boid) <= radius, ordered by
  /// boid id.
  std::vector<std::size_t> within(const Position& p) const;

  std::size_t count_within(const Position& p) const;

  /// Flockmates of `self` as boid copies ordered by id; `self` is excluded by id.
  std::vector<BoidState> flockmates(const BoidState& self) const;

  bool linear() const { return cols_ == 0; }

 private:
  std::size_t cell_of(double v, double lo, double cell, std::size_t n) const;
  template <typename Visit>
  void visit_candidates(const Position& p, Visit&& visit) const;

  std::span<const BoidState> boids_;
  double radius_;
  WorldBounds bounds_;
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
  double cell_w_ = 0.0;
  double cell_h_ = 0.0;
  std::vector<std::size_t> cell_start_;
  std::vector<std::size_t> entries_;
};

}  // namespace boidsense
