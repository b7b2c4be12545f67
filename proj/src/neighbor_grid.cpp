#include "boidsense/neighbor_grid.hpp"

#include <algorithm>
#include <cmath>

namespace boidsense {

namespace {

constexpr std::size_t kMaxCellsPerAxis = 1024;

std::size_t cells_for(double span, double radius) {
  const double n = std::floor(span / radius);
  if (!std::isfinite(n)) return kMaxCellsPerAxis;
  return static_cast<std::size_t>(std::clamp(n, 0.0, double(kMaxCellsPerAxis)));
}

}  // namespace

NeighborGrid::NeighborGrid(std::span<const BoidState> boids, double radius,
                           const WorldBounds& bounds)
    : boids_(boids), radius_(radius), bounds_(bounds) {
  if (!(radius > 0.0)) return;
  std::size_t cols = cells_for(bounds.width(), radius);
  std::size_t rows = cells_for(bounds.height(), radius);
  const std::size_t min_cells = bounds.topology == Topology::torus ? 3 : 1;
  if (cols < min_cells || rows < min_cells) return;

  cols_ = cols;
  rows_ = rows;
  cell_w_ = bounds.width() / double(cols);
  cell_h_ = bounds.height() / double(rows);

  std::vector<std::size_t> cell_index(boids.size());
  cell_start_.assign(cols_ * rows_ + 1, 0);
  for (std::size_t i = 0; i < boids.size(); ++i) {
    const std::size_t cx = cell_of(boids[i].pos.x(), bounds.min_x, cell_w_, cols_);
    const std::size_t cy = cell_of(boids[i].pos.y(), bounds.min_y, cell_h_, rows_);
    cell_index[i] = cy * cols_ + cx;
    ++cell_start_[cell_index[i] + 1];
  }
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  entries_.resize(boids.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < boids.size(); ++i) entries_[fill[cell_index[i]]++] = i;
}

std::size_t NeighborGrid::cell_of(double v, double lo, double cell, std::size_t n) const {
  const double c = std::floor((v - lo) / cell);
  if (!(c > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(c), n - 1);
}

template <typename Visit>
void NeighborGrid::visit_candidates(const Position& p, Visit&& visit) const {
  if (linear()) {
    for (std::size_t i = 0; i < boids_.size(); ++i) visit(i);
    return;
  }
  const bool torus = bounds_.topology == Topology::torus;
  const auto cx = static_cast<std::ptrdiff_t>(cell_of(p.x(), bounds_.min_x, cell_w_, cols_));
  const auto cy = static_cast<std::ptrdiff_t>(cell_of(p.y(), bounds_.min_y, cell_h_, rows_));
  const auto cols = static_cast<std::ptrdiff_t>(cols_);
  const auto rows = static_cast<std::ptrdiff_t>(rows_);
  for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
    std::ptrdiff_t y = cy + dy;
    if (torus) {
      y = (y + rows) % rows;
    } else if (y < 0 || y >= rows) {
      continue;
    }
    for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
      std::ptrdiff_t x = cx + dx;
      if (torus) {
        x = (x + cols) % cols;
      } else if (x < 0 || x >= cols) {
        continue;
      }
      const auto cell = static_cast<std::size_t>(y * cols + x);
      for (std::size_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) visit(entries_[k]);
    }
  }
}

std::vector<std::size_t> NeighborGrid::within(const Position& p) const {
  std::vector<std::size_t> hits;
  visit_candidates(p, [&](std::size_t i) {
    if (distance(p, boids_[i].pos, bounds_) <= radius_) hits.push_back(i);
  });
  std::sort(hits.begin(), hits.end(),
            [&](std::size_t a, std::size_t b) { return boids_[a].id < boids_[b].id; });
  return hits;
}

std::size_t NeighborGrid::count_within(const Position& p) const {
  std::size_t n = 0;
  visit_candidates(p, [&](std::size_t i) {
    if (distance(p, boids_[i].pos, bounds_) <= radius_) ++n;
  });
  return n;
}

std::vector<BoidState> NeighborGrid::flockmates(const BoidState& self) const {
  std::vector<BoidState> mates;
  for (std::size_t i : within(self.pos)) {
    if (boids_[i].id != self.id) mates.push_back(boids_[i]);
  }
  return mates;
}

}  // namespace boidsense
