#include "oracles.hpp"

#include "ttdm/error.hpp"
#include "ttdm/synthetic.hpp"
#include "ttdm/transfer_graph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace ttdm;
using ttdm::testing::L;

namespace {

Dataset dataset_of(std::vector<Trajectory> trajs, std::size_t n) { return Dataset{std::move(trajs), n}; }

TransferGraphs wrap(TransferGraph g) {
  TransferGraphs gs;
  gs.slots.push_back(g);
  gs.aggregate = std::move(g);
  return gs;
}

Dataset random_dataset(std::mt19937_64 &rng, std::size_t n_traj, std::size_t n_loc) {
  std::uniform_int_distribution<LocationId> loc(0, LocationId(n_loc - 1));
  std::uniform_int_distribution<Timestamp> start(0, 3 * kSecondsPerDay), step(0, 900), len(2, 8);
  Dataset d{{}, n_loc};
  for (std::size_t i = 0; i < n_traj; ++i) {
    Trajectory t{"u", {}};
    Timestamp clock = start(rng);
    for (Timestamp k = len(rng); k > 0; --k) {
      t.points.push_back({loc(rng), clock});
      clock += step(rng);
    }
    d.trajectories.push_back(std::move(t));
  }
  return d;
}

}  // namespace

TEST(SlotOf, ThirtyMinuteSlots) {
  SlotConfig half_hour{1800};
  EXPECT_EQ(half_hour.slots_per_day(), 48u);
  EXPECT_EQ(slot_of(9 * 3600 + 13 * 60, half_hour), 18u);
  EXPECT_EQ(slot_of(1441065600 + 9 * 3600 + 13 * 60, half_hour), 18u);
  EXPECT_EQ(slot_of(0, half_hour), 0u);
  EXPECT_EQ(slot_of(kSecondsPerDay - 1, half_hour), 47u);
}

TEST(SlotOf, SingleDaySlot) {
  SlotConfig day{};
  EXPECT_EQ(slot_of(0, day), 0u);
  EXPECT_EQ(slot_of(1441065600 + 33180, day), 0u);
  EXPECT_EQ(slot_of(86399, day), 0u);
}

TEST(SlotConfig, RejectsNonDivisors) {
  EXPECT_THROW(SlotConfig{7}.validate(), ConfigError);
  EXPECT_THROW(SlotConfig{0}.validate(), ConfigError);
  EXPECT_NO_THROW(SlotConfig{1800}.validate());
}

TEST(BuildGraphs, EdgeWeightIsMean) {
  auto g = build_graphs(dataset_of({{"u", {{0, 0}, {1, 60}}}, {"u", {{0, 100}, {1, 220}}}}, 2), {});
  EXPECT_EQ(g.slot(0).weight(0, 1), 90.0);
  EXPECT_EQ(g.slot(0).out_edges(0)[0].count, 2u);
  EXPECT_FALSE(g.slot(0).weight(1, 0));
}

TEST(BuildGraphs, BothDirectionsOfIntroExampleSegment) {
  auto g = build_graphs(dataset_of({{"u", {{L(2), 0}, {L(3), 60}, {L(2), 120}}}}, 9), {});
  EXPECT_EQ(g.slot(0).weight(L(2), L(3)), 60.0);
  EXPECT_EQ(g.slot(0).weight(L(3), L(2)), 60.0);
}

TEST(BuildGraphs, ZeroDurationAndNegativeDrop) {
  auto g = build_graphs(dataset_of({{"u", {{0, 50}, {1, 50}, {2, 10}}}}, 3), {});
  EXPECT_EQ(g.slot(0).weight(0, 1), 0.0);
  EXPECT_FALSE(g.slot(0).weight(1, 2));
  EXPECT_EQ(g.dropped_negative, 1u);
}

TEST(BuildGraphs, SlotChosenByOriginTimestamp) {
  // Departs 00:29:50 (slot 0), arrives in slot 1.
  auto g = build_graphs(dataset_of({{"u", {{0, 1790}, {1, 1850}}}}, 2), SlotConfig{1800});
  ASSERT_EQ(g.slots.size(), 48u);
  EXPECT_EQ(g.slot(0).weight(0, 1), 60.0);
  EXPECT_FALSE(g.slot(1).has_edges());
  EXPECT_EQ(g.hop_seconds(5, 0, 1), 60.0);  // falls back to the all-slot mean
}

TEST(BuildGraphs, WeightsMatchArithmeticMeanPerSlot) {
  std::mt19937_64 rng(11);
  SlotConfig cfg{3600};
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_dataset(rng, 40, 6);
    auto g = build_graphs(d, cfg);
    std::map<std::tuple<SlotIndex, LocationId, LocationId>, std::vector<double>> obs;
    for (const auto &t : d.trajectories)
      for (std::size_t i = 0; i + 1 < t.size(); ++i)
        obs[{slot_of(t.points[i].time, cfg), t.points[i].location, t.points[i + 1].location}].push_back(
            double(t.points[i + 1].time - t.points[i].time));
    std::size_t edges = 0;
    for (const auto &[key, values] : obs) {
      auto [k, a, b] = key;
      double mean = 0;
      for (double v : values) mean += v;
      mean /= double(values.size());
      auto w = g.slot(k).weight(a, b);
      ASSERT_TRUE(w);
      EXPECT_NEAR(*w, mean, 1e-9 * std::max(1.0, mean));
      ++edges;
    }
    std::size_t built = 0;
    for (const auto &s : g.slots) built += s.edge_count();
    EXPECT_EQ(built, edges);
  }
}

TEST(BuildGraphs, MergeEqualsBuildOnConcatenation) {
  std::mt19937_64 rng(5);
  SlotConfig cfg{7200};
  auto a = random_dataset(rng, 30, 5);
  auto b = random_dataset(rng, 30, 5);
  GraphBuilder left(5, cfg), right(5, cfg);
  for (const auto &t : a.trajectories) left.add(t);
  for (const auto &t : b.trajectories) right.add(t);
  left.merge(right);
  Dataset both = a;
  both.trajectories.insert(both.trajectories.end(), b.trajectories.begin(), b.trajectories.end());
  auto merged = left.finish();
  auto direct = build_graphs(both, cfg);
  EXPECT_EQ(merged.slots, direct.slots);
  EXPECT_EQ(merged.aggregate, direct.aggregate);
}

TEST(BuildGraphs, SingleSlotEqualsAggregate) {
  std::mt19937_64 rng(9);
  auto d = random_dataset(rng, 50, 7);
  auto g = build_graphs(d, SlotConfig{kSecondsPerDay});
  ASSERT_EQ(g.slots.size(), 1u);
  EXPECT_EQ(g.slots[0], g.aggregate);
}

TEST(CandidateNextLocations, IntroExampleCurrentLocation) {
  auto gs = ttdm::testing::intro_graphs();
  EXPECT_EQ(candidate_next_locations(gs, L(6)), (std::vector<LocationId>{L(3), L(5), L(7), L(9)}));
}

TEST(CandidateNextLocations, NoOutgoingAndUnknown) {
  auto g = build_graphs(dataset_of({{"u", {{0, 0}, {1, 60}}}}, 3), {});
  EXPECT_TRUE(candidate_next_locations(g, 1).empty());
  EXPECT_TRUE(candidate_next_locations(g, 2).empty());
  EXPECT_TRUE(candidate_next_locations(g, 99).empty());
}

TEST(CandidateNextLocations, GridCornerHasTwoNeighbours) {
  GridSpec grid{4, 5, 60, 0, 3};
  auto world = generate(grid, AgentSpec{200, 5, 1.0});
  auto g = build_graphs(world.dataset, {});
  EXPECT_EQ(candidate_next_locations(g, grid.cell(0, 0)), (std::vector<LocationId>{grid.cell(0, 1), grid.cell(1, 0)}));
  EXPECT_EQ(candidate_next_locations(g, grid.cell(3, 4)), (std::vector<LocationId>{grid.cell(2, 4), grid.cell(3, 3)}));
}

TEST(CandidateNextLocations, SupersetOfEverySlot) {
  std::mt19937_64 rng(21);
  auto g = build_graphs(random_dataset(rng, 60, 8), SlotConfig{3600});
  for (const auto &slot : g.slots)
    for (LocationId l = 0; l < 8; ++l) {
      auto cands = candidate_next_locations(g, l);
      for (const auto &e : slot.out_edges(l))
        EXPECT_TRUE(std::binary_search(cands.begin(), cands.end(), e.to));
    }
}

TEST(CandidateCountCdf, AllTwo) {
  TransferGraph ring(4);
  for (LocationId i = 0; i < 4; ++i) {
    ring.set_edge(i, (i + 1) % 4, 1);
    ring.set_edge(i, (i + 3) % 4, 1);
  }
  auto cdf = candidate_count_cdf(wrap(ring));
  ASSERT_EQ(cdf.steps.size(), 1u);
  EXPECT_EQ(cdf.steps[0], (std::pair<std::size_t, double>{2, 1.0}));
  EXPECT_DOUBLE_EQ(cdf.mean, 2.0);
  EXPECT_DOUBLE_EQ(cdf.fraction_above(2), 0.0);
}

TEST(CandidateCountCdf, ThreeByThreeGrid) {
  auto cdf = candidate_count_cdf(wrap(grid_graph(GridSpec{3, 3, 60, 0, 0})));
  // Degrees enumerated by hand: 4 corners x 2, 4 edges x 3, 1 centre x 4.
  EXPECT_NEAR(cdf.mean, 24.0 / 9.0, 1e-12);
  ASSERT_EQ(cdf.steps.size(), 3u);
  EXPECT_NEAR(cdf.steps[0].second, 4.0 / 9.0, 1e-12);
  EXPECT_NEAR(cdf.steps[1].second, 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(cdf.steps[2].second, 1.0, 1e-12);
  EXPECT_NEAR(cdf.fraction_above(2), 5.0 / 9.0, 1e-12);
}

TEST(GraphCsv, CanonicalOrderAndRoundTrip) {
  SlotConfig cfg{43200};
  auto g = build_graphs(dataset_of({{"u", {{2, 50000}, {0, 50090}, {1, 50100}}}, {"u", {{1, 10}, {0, 30}}}}, 3), cfg);
  std::stringstream ss;
  write_graphs(ss, g);
  EXPECT_EQ(ss.str(), "slot,from,to,avg_seconds,count\n0,1,0,20,1\n1,0,1,10,1\n1,2,0,90,1\n");
  auto back = read_graphs(ss, cfg, 3);
  EXPECT_EQ(back.slots, g.slots);
  EXPECT_EQ(back.aggregate, g.aggregate);
}

TEST(GraphCsv, NonIntegralAveragesSurviveExactly) {
  auto g = build_graphs(dataset_of({{"u", {{0, 0}, {1, 1}}}, {"u", {{0, 0}, {1, 1}}}, {"u", {{0, 0}, {1, 2}}}}, 2), {});
  std::stringstream ss;
  write_graphs(ss, g);
  auto back = read_graphs(ss, {}, 2);
  EXPECT_EQ(back.slot(0).weight(0, 1), g.slot(0).weight(0, 1));
  EXPECT_EQ(back.aggregate.weight(0, 1), g.aggregate.weight(0, 1));
}

TEST(GraphCsv, RejectsBadInput) {
  auto read = [](const std::string &s) {
    std::istringstream in(s);
    return read_graphs(in, SlotConfig{}, 3);
  };
  EXPECT_THROW(read(""), ParseError);
  EXPECT_THROW(read("slot,from,to\n"), ParseError);
  EXPECT_THROW(read("slot,from,to,avg_seconds,count\n0,0,5,1,1\n"), ParseError);
  EXPECT_THROW(read("slot,from,to,avg_seconds,count\n1,0,1,1,1\n"), ParseError);
  EXPECT_THROW(read("slot,from,to,avg_seconds,count\n0,0,1,-1,1\n"), ParseError);
  EXPECT_THROW(read("slot,from,to,avg_seconds,count\n0,0,1,1,0\n"), ParseError);
  EXPECT_THROW(read("slot,from,to,avg_seconds,count\n0,1,0,1,1\n0,0,1,1,1\n"), ParseError);
  EXPECT_NO_THROW(read("slot,from,to,avg_seconds,count\n"));
}
