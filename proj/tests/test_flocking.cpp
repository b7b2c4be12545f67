#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "boidsense/flocking.hpp"
#include "oracles.hpp"

using namespace boidsense;

namespace {

BoidState boid(BoidId id, double x, double y, double heading) {
  return {id, Position(x, y), Heading{heading}};
}

WorldBounds bounded() {
  WorldBounds b;
  b.topology = Topology::bounded;
  return b;
}

FlockParams params_with_vision(double vision) {
  FlockParams p;
  p.vision = vision;
  return p;
}

/// Heading change from a to b taking the short way round.
double change(Heading a, Heading b) { return std::abs(subtract_heading(b, a)); }

}  // namespace

TEST(FindFlockmates, Examples) {
  const WorldBounds w;
  const BoidState self = boid(0, 0, 0, 0);
  const std::vector<BoidState> all = {self, boid(1, 2, 0, 0), boid(2, 0, 20, 0), boid(3, 30, 30, 0)};
  auto mates = find_flockmates(self, all, params_with_vision(3.0), w);
  ASSERT_EQ(mates.size(), 1u);
  EXPECT_EQ(mates[0].id, 1);

  const std::vector<BoidState> alone = {self};
  EXPECT_TRUE(find_flockmates(self, alone, params_with_vision(3.0), w).empty());

  const std::vector<BoidState> edge = {self, boid(1, 3, 0, 0)};
  EXPECT_EQ(find_flockmates(self, edge, params_with_vision(3.0), w).size(), 1u);
}

TEST(FindFlockmates, NeverContainsSelfAndIsSortedById) {
  const WorldBounds w;
  const std::vector<BoidState> all = {boid(9, 0, 0, 0), boid(4, 0.5, 0, 0), boid(2, 0, 0.5, 0),
                                      boid(5, 0, 0, 0)};
  const auto mates = find_flockmates(all[0], all, params_with_vision(3.0), w);
  ASSERT_EQ(mates.size(), 3u);
  EXPECT_EQ(mates[0].id, 2);
  EXPECT_EQ(mates[1].id, 4);
  EXPECT_EQ(mates[2].id, 5);
}

TEST(FindFlockmates, MatchesBruteForceOn200Scenes) {
  std::mt19937_64 rng(21);
  for (int scene = 0; scene < 200; ++scene) {
    WorldBounds w;
    if (scene % 2) w.topology = Topology::bounded;
    const std::size_t n = 1 + rng() % 100;
    const auto all = oracle::random_boids(rng, n, w);
    const FlockParams p = params_with_vision(1.0 + double(rng() % 60) / 10.0);
    for (const BoidState& self : all) {
      std::set<BoidId> got;
      for (const BoidState& m : find_flockmates(self, all, p, w)) got.insert(m.id);
      ASSERT_EQ(got, oracle::flockmate_ids(self, all, p.vision, w)) << "scene " << scene;
    }
  }
}

TEST(FindNearestNeighbor, Examples) {
  const WorldBounds w;
  const BoidState self = boid(0, 0, 0, 0);
  const std::vector<BoidState> mates = {boid(1, 3, 0, 0), boid(2, 0, 2, 0)};
  EXPECT_EQ(find_nearest_neighbor(self, mates, w)->id, 2);
  EXPECT_FALSE(find_nearest_neighbor(self, {}, w).has_value());
}

TEST(FindNearestNeighbor, TieGoesToSmallestIdUnderEveryOrdering) {
  const WorldBounds w;
  const BoidState self = boid(0, 0, 0, 0);
  std::vector<BoidState> mates = {boid(7, 2, 0, 0), boid(4, 0, -2, 0), boid(9, 0, 2.5, 0),
                                  boid(11, -2, 0, 0)};
  std::sort(mates.begin(), mates.end(), [](auto& a, auto& b) { return a.id < b.id; });
  do {
    const auto nearest = find_nearest_neighbor(self, mates, w);
    ASSERT_TRUE(nearest);
    ASSERT_EQ(nearest->id, 4);
    for (const BoidState& m : mates) {
      ASSERT_LE(distance(self.pos, nearest->pos, w), distance(self.pos, m.pos, w));
    }
  } while (std::next_permutation(mates.begin(), mates.end(),
                                 [](auto& a, auto& b) { return a.id < b.id; }));
}

TEST(FindNearestNeighbor, MatchesBruteForceOn200Scenes) {
  std::mt19937_64 rng(22);
  for (int scene = 0; scene < 200; ++scene) {
    WorldBounds w;
    if (scene % 3 == 0) w.topology = Topology::bounded;
    const auto all = oracle::random_boids(rng, 1 + rng() % 100, w);
    const FlockParams p = params_with_vision(5.0);
    for (const BoidState& self : all) {
      const auto mates = find_flockmates(self, all, p, w);
      const auto got = find_nearest_neighbor(self, mates, w);
      const auto want = oracle::nearest_id(self, mates, w);
      ASSERT_EQ(got.has_value(), want.has_value());
      if (got) ASSERT_EQ(got->id, *want);
    }
  }
}

TEST(ClampTurn, Examples) {
  EXPECT_EQ(clamp_turn(50, 1.5), 1.5);
  EXPECT_EQ(clamp_turn(1.0, 1.5), 1.0);
  EXPECT_EQ(clamp_turn(-50, 1.5), -1.5);
  EXPECT_EQ(clamp_turn(0.0, 1.5), 0.0);
}

TEST(ClampTurn, ReachesTheClosestHeadingAllowedByBruteForce) {
  // Enumerate every reachable turn on a fine grid and pick the one landing
  // closest to the desired heading.
  for (double desired : {-50.0, -1.0, -1.5, 0.3, 1.5, 50.0, 179.0, -179.0}) {
    const double max_turn = 1.5;
    double best_turn = 0.0;
    double best_gap = 1e9;
    for (int k = -1500; k <= 1500; ++k) {
      const double t = k * 0.001;
      const double gap = std::abs(subtract_degrees(t, desired));
      if (gap < best_gap) {
        best_gap = gap;
        best_turn = t;
      }
    }
    EXPECT_NEAR(clamp_turn(desired, max_turn), best_turn, 1e-9) << desired;
  }
}

TEST(TowardsAndAwayTurn, Examples) {
  EXPECT_EQ(towards_turn(boid(0, 0, 0, 0), {30}), 30.0);
  EXPECT_EQ(towards_turn(boid(0, 0, 0, 30), {0}), -30.0);
  EXPECT_EQ(towards_turn(boid(0, 0, 0, 10), {350}), -20.0);
  EXPECT_EQ(away_turn(boid(0, 0, 0, 0), {30}), -30.0);
  EXPECT_EQ(away_turn(boid(0, 0, 0, 0), {0}), 0.0);
  EXPECT_EQ(away_turn(boid(0, 0, 0, 350), {10}), -20.0);
}

TEST(Separate, Examples) {
  FlockParams p;
  p.max_separate_turn = 1.5;
  // away_turn = -30 -> clamp to -1.5 -> 358.5
  const BoidState self = boid(0, 0, 0, 0);
  const double composed =
      normalize_heading(self.heading.degrees + clamp_turn(away_turn(self, {30}), 1.5)).degrees;
  EXPECT_EQ(composed, 358.5);
  EXPECT_EQ(separate(self, boid(1, 0, 0, 30), p).degrees, 358.5);
  EXPECT_EQ(separate(self, boid(1, 0, 0, 0), p).degrees, 0.0);
  p.max_separate_turn = 5;
  EXPECT_EQ(separate(self, boid(1, 0, 0, 1), p).degrees, 359.0);
}

TEST(AverageFlockmateHeading, Examples) {
  EXPECT_NEAR(average_flockmate_heading(std::vector{boid(1, 0, 0, 90), boid(2, 0, 0, 90)}).degrees,
              90.0, 1e-9);
  EXPECT_NEAR(average_flockmate_heading(std::vector{boid(1, 0, 0, 0), boid(2, 0, 0, 90)}).degrees,
              45.0, 1e-9);
  EXPECT_NEAR(average_flockmate_heading(std::vector{boid(1, 0, 0, 350), boid(2, 0, 0, 10)}).degrees,
              0.0, 1e-9);
}

TEST(AverageFlockmateHeading, CancellationFallsBackToSmallestId) {
  const std::vector<BoidState> mates = {boid(8, 0, 0, 180), boid(3, 0, 0, 0)};
  const Vec2<double> sum = heading_vector(0.0) + heading_vector(180.0);
  ASSERT_LT(sum.norm(), kCircularMeanEpsilon);
  EXPECT_EQ(average_flockmate_heading(mates).degrees, 0.0);
  const std::vector<BoidState> swapped = {boid(3, 0, 0, 180), boid(8, 0, 0, 0)};
  EXPECT_EQ(average_flockmate_heading(swapped).degrees, 180.0);
}

TEST(AverageFlockmateHeading, EmptyIsPreconditionViolation) {
  EXPECT_THROW(average_flockmate_heading({}), PreconditionViolation);
}

TEST(Align, Examples) {
  FlockParams p;
  p.max_align_turn = 5;
  EXPECT_EQ(align(boid(0, 0, 0, 0), {3}, p).degrees, 3.0);
  EXPECT_EQ(align(boid(0, 0, 0, 0), {90}, p).degrees, 5.0);
  EXPECT_EQ(align(boid(0, 0, 0, 0), {0}, p).degrees, 0.0);
  EXPECT_EQ(align(boid(0, 0, 0, 0), {270}, p).degrees, 355.0);
}

TEST(Cohere, Examples) {
  const WorldBounds w = bounded();
  FlockParams p;
  p.max_cohere_turn = 90;
  std::vector<BoidState> one = {boid(1, 5, 0, 0)};
  EXPECT_NEAR(cohere(boid(0, 0, 0, 0), one, p, w).degrees, 90.0, 1e-9);
  EXPECT_NEAR(cohere(boid(0, 0, 0, 90), one, p, w).degrees, 90.0, 1e-9);
}

TEST(Cohere, OpposingBearingsCancelToSmallestIdBearing) {
  const WorldBounds w = bounded();
  FlockParams p;
  p.max_cohere_turn = 3;
  // Bearings 90 and 270 cancel; id 1 (east, bearing 90) wins -> +3.
  const std::vector<BoidState> mates = {boid(2, -5, 0, 0), boid(1, 5, 0, 0)};
  const Vec2<double> sum = heading_vector(90.0) + heading_vector(270.0);
  ASSERT_LT(sum.norm(), kCircularMeanEpsilon);
  EXPECT_NEAR(cohere(boid(0, 0, 0, 0), mates, p, w).degrees, 3.0, 1e-9);
  const std::vector<BoidState> flipped = {boid(1, -5, 0, 0), boid(2, 5, 0, 0)};
  EXPECT_NEAR(cohere(boid(0, 0, 0, 0), flipped, p, w).degrees, 357.0, 1e-9);
}

TEST(Cohere, TorusBearingUsesShortestDisplacement) {
  const WorldBounds w;
  FlockParams p;
  p.max_cohere_turn = 90;
  // Flockmate across the east seam lies to the east.
  const std::vector<BoidState> mates = {boid(1, -34, 0, 0)};
  EXPECT_NEAR(cohere(boid(0, 34, 0, 0), mates, p, w).degrees, 90.0, 1e-9);
}

TEST(Cohere, ColocatedFlockmatesLeaveHeadingUnchanged) {
  FlockParams p;
  const std::vector<BoidState> mates = {boid(1, 2, 2, 45)};
  EXPECT_EQ(cohere(boid(0, 2, 2, 17), mates, p, WorldBounds{}).degrees, 17.0);
  EXPECT_THROW(cohere(boid(0, 2, 2, 17), {}, p, WorldBounds{}), PreconditionViolation);
}

TEST(FlockStep, SeparationOverridesAlignAndCohere) {
  const WorldBounds w;
  FlockParams p;  // min_separation 1, vision 3
  const std::vector<BoidState> all = {boid(0, 0, 0, 0), boid(1, 0.5, 0, 30), boid(2, 2.5, 0, 90)};
  const FlockStep step = flock_step(all[0], all, p, w);
  EXPECT_EQ(step.decision.rule, Rule::separate);
  EXPECT_EQ(step.heading.degrees, 358.5);
  EXPECT_NEAR(step.decision.turn, -1.5, 1e-12);
}

TEST(FlockStep, SeparationBoundaryIsInclusive) {
  const WorldBounds w;
  FlockParams p;
  const std::vector<BoidState> all = {boid(0, 0, 0, 0), boid(1, 1.0, 0, 30)};
  EXPECT_EQ(flock_step(all[0], all, p, w).decision.rule, Rule::separate);
}

TEST(FlockStep, EmptyNeighbourhoodFliesStraight) {
  const WorldBounds w;
  const FlockParams p;
  const std::vector<BoidState> all = {boid(0, 0, 0, 123), boid(1, 20, 20, 0)};
  const FlockStep step = flock_step(all[0], all, p, w);
  EXPECT_EQ(step.decision.rule, Rule::none);
  EXPECT_EQ(step.decision.turn, 0.0);
  EXPECT_EQ(step.heading.degrees, 123.0);
}

TEST(FlockStep, AlignThenCohereSequentially) {
  const WorldBounds w = bounded();
  FlockParams p;  // align 5, cohere 3
  // Flockmate due east at distance 2 heading 90: align 0 -> 5, then cohere
  // sees heading 5 and turns +3 toward bearing 90.
  const std::vector<BoidState> all = {boid(0, 0, 0, 0), boid(1, 2, 0, 90)};
  const FlockStep step = flock_step(all[0], all, p, w);
  EXPECT_EQ(step.decision.rule, Rule::align_cohere);
  EXPECT_NEAR(step.heading.degrees, 8.0, 1e-9);
  EXPECT_NEAR(step.decision.turn, 8.0, 1e-9);

  BoidState aligned = all[0];
  aligned.heading = align(all[0], average_flockmate_heading(std::vector{all[1]}), p);
  const Heading composed = cohere(aligned, std::vector{all[1]}, p, w);
  EXPECT_EQ(step.heading, composed);
}

TEST(FlockStep, TurnsStayWithinTheirCaps) {
  std::mt19937_64 rng(23);
  const FlockParams p;
  for (int scene = 0; scene < 100; ++scene) {
    WorldBounds w;
    const auto all = oracle::random_boids(rng, 2 + rng() % 60, w);
    for (const BoidState& self : all) {
      const FlockStep step = flock_step(self, all, p, w);
      const double turned = change(self.heading, step.heading);
      ASSERT_NEAR(std::abs(step.decision.turn), turned, 1e-9);
      switch (step.decision.rule) {
        case Rule::none:
          ASSERT_EQ(step.decision.turn, 0.0);
          break;
        case Rule::separate:
          ASSERT_LE(turned, p.max_separate_turn + 1e-9);
          break;
        case Rule::align_cohere:
          ASSERT_LE(turned, p.max_align_turn + p.max_cohere_turn + 1e-9);
          break;
      }
    }
  }
}

TEST(FlockStep, AlignmentContractsHeadingGap) {
  // Two boids within vision, beyond min_separation, align only.
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> uh(0.0, 360.0);
  std::uniform_real_distribution<double> ud(1.01, 3.0);
  FlockParams p;
  p.max_cohere_turn = 0;
  const WorldBounds w;
  for (int i = 0; i < 2000; ++i) {
    const double d = ud(rng);
    const std::vector<BoidState> pair = {boid(0, 0, 0, uh(rng)), boid(1, d, 0, uh(rng))};
    const Heading h0 = flock_step(pair[0], pair, p, w).heading;
    const Heading h1 = flock_step(pair[1], pair, p, w).heading;
    ASSERT_LE(std::abs(subtract_heading(h0, h1)),
              std::abs(subtract_heading(pair[0].heading, pair[1].heading)) + 1e-9);
  }
}

TEST(Advance, Examples) {
  FlockParams p;
  p.speed = 1;
  const WorldBounds w;
  const Position north = advance(boid(0, 0, 0, 0), p, w);
  EXPECT_NEAR(north.x(), 0.0, 1e-12);
  EXPECT_NEAR(north.y(), 1.0, 1e-12);
  const Position east = advance(boid(0, 0, 0, 90), p, w);
  EXPECT_NEAR(east.x(), 1.0, 1e-12);
  EXPECT_NEAR(east.y(), 0.0, 1e-12);
  const Position wrapped = advance(boid(0, 0, 34.5, 0), p, w);
  EXPECT_NEAR(wrapped.x(), 0.0, 1e-12);
  EXPECT_NEAR(wrapped.y(), -34.5, 1e-12);
}

TEST(Advance, KeepsPositionInvariantUnderBothTopologies) {
  std::mt19937_64 rng(25);
  FlockParams p;
  p.speed = 2.5;
  for (Topology t : {Topology::torus, Topology::bounded}) {
    WorldBounds w;
    w.topology = t;
    for (const BoidState& b : oracle::random_boids(rng, 2000, w)) {
      ASSERT_TRUE(w.contains(advance(b, p, w)));
    }
  }
}

TEST(Rule, StringRoundTrip) {
  for (Rule r : {Rule::none, Rule::separate, Rule::align_cohere}) {
    EXPECT_EQ(rule_from_string(to_string(r)), r);
  }
  EXPECT_FALSE(rule_from_string("cohere").has_value());
}
