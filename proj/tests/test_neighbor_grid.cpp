#include <gtest/gtest.h>

#include <random>

#include "boidsense/neighbor_grid.hpp"
#include "oracles.hpp"

using namespace boidsense;

TEST(NeighborGrid, MatchesImageDistanceOracle) {
  std::mt19937_64 rng(31);
  for (int scene = 0; scene < 200; ++scene) {
    WorldBounds w;
    if (scene % 2) w.topology = Topology::bounded;
    const auto boids = oracle::random_boids(rng, 1 + rng() % 100, w);
    const double radius = 0.5 + double(rng() % 100) / 10.0;
    const NeighborGrid grid(boids, radius, w);
    for (const BoidState& self : boids) {
      std::set<BoidId> got;
      for (const BoidState& m : grid.flockmates(self)) got.insert(m.id);
      ASSERT_EQ(got, oracle::flockmate_ids(self, boids, radius, w)) << "scene " << scene;
    }
  }
}

TEST(NeighborGrid, ResultsOrderedById) {
  std::mt19937_64 rng(32);
  const WorldBounds w;
  const auto boids = oracle::random_boids(rng, 80, w);
  const NeighborGrid grid(boids, 8.0, w);
  for (const BoidState& self : boids) {
    const auto mates = grid.flockmates(self);
    for (std::size_t i = 1; i < mates.size(); ++i) ASSERT_LT(mates[i - 1].id, mates[i].id);
  }
}

TEST(NeighborGrid, SmallWorldsAndZeroRadiusScanLinearly) {
  const std::vector<BoidState> boids = {{0, Position(0, 0), {}}, {1, Position(0, 0), {}},
                                        {2, Position(0.1, 0), {}}};
  const WorldBounds w;
  const NeighborGrid zero(boids, 0.0, w);
  EXPECT_TRUE(zero.linear());
  EXPECT_EQ(zero.count_within(Position(0, 0)), 2u);

  const NeighborGrid wide(boids, 30.0, w);  // only 2 cells per axis on a torus
  EXPECT_TRUE(wide.linear());
  EXPECT_EQ(wide.count_within(Position(20, 20)), 3u);

  const NeighborGrid fine(boids, 3.0, w);
  EXPECT_FALSE(fine.linear());
}

TEST(NeighborGrid, SeamNeighbours) {
  const WorldBounds w;
  const std::vector<BoidState> boids = {{0, Position(-34.9, -34.9), {}}, {1, Position(34.9, 34.9), {}}};
  const NeighborGrid grid(boids, 1.0, w);
  EXPECT_EQ(grid.flockmates(boids[0]).size(), 1u);
  WorldBounds b = w;
  b.topology = Topology::bounded;
  const NeighborGrid walled(boids, 1.0, b);
  EXPECT_TRUE(walled.flockmates(boids[0]).empty());
}
