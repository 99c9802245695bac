#include "oracles.hpp"

#include "ttdm/error.hpp"
#include "ttdm/markov_model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace ttdm;
using ttdm::testing::L;

namespace {

constexpr LocationId A = 0, B = 1, C = 2;

Trajectory path(std::initializer_list<LocationId> locs) {
  Trajectory t{"u", {}};
  Timestamp clock = 0;
  for (LocationId l : locs) t.points.push_back({l, clock += 60});
  return t;
}

Dataset random_dataset(std::mt19937_64 &rng, std::size_t n_traj, std::size_t n_loc) {
  std::uniform_int_distribution<LocationId> loc(0, LocationId(n_loc - 1));
  std::uniform_int_distribution<int> len(1, 7);
  Dataset d{{}, n_loc};
  for (std::size_t i = 0; i < n_traj; ++i) {
    Trajectory t{"u", {}};
    for (int k = len(rng); k > 0; --k) t.points.push_back({loc(rng), Timestamp(k)});
    d.trajectories.push_back(t);
  }
  return d;
}

}  // namespace

TEST(MarkovTrain, CountsOccurrencesAndPairs) {
  auto m = train_markov(Dataset{{path({A, B, A})}, 3});
  EXPECT_EQ(m.count(A), 2u);
  EXPECT_EQ(m.count(B), 1u);
  EXPECT_EQ(m.count(A, B), 1u);
  EXPECT_EQ(m.count(B, A), 1u);
  EXPECT_EQ(m.count(A, A), 0u);
}

TEST(MarkovTrain, LastLocationHasNoSuccessor) {
  auto m = train_markov(Dataset{{path({A, B, C})}, 3});
  EXPECT_EQ(m.count(C), 1u);
  for (LocationId l = 0; l < 3; ++l) EXPECT_EQ(m.count(C, l), 0u);
}

TEST(MarkovProb, MaximumLikelihood) {
  auto m = train_markov(Dataset{{path({A, B, A})}, 3});
  EXPECT_DOUBLE_EQ(m.prob(A, B), 0.5);  // #(A,B)=1, #(A)=2
  EXPECT_DOUBLE_EQ(m.prob(B, A), 1.0);
  EXPECT_EQ(m.prob(A, C), 0.0);
  EXPECT_EQ(m.prob(C, A), 0.0);   // never observed
  EXPECT_EQ(m.prob(99, A), 0.0);  // unknown
}

TEST(MarkovProb, IntroExampleUniformFromL6) {
  Dataset d{{}, 9};
  for (int next : {3, 5, 7, 9}) d.trajectories.push_back(path({L(6), L(next)}));
  auto m = train_markov(d);
  for (int next : {3, 5, 7, 9}) EXPECT_DOUBLE_EQ(m.prob(L(6), L(next)), 0.25);
}

TEST(MarkovProb, SuccessorMassAtMostOne) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_dataset(rng, 30, 6);
    auto m = train_markov(d);
    std::vector<bool> ends(6, false);
    for (const auto &t : d.trajectories) ends[t.back().location] = true;
    for (LocationId l = 0; l < 6; ++l) {
      if (m.count(l) == 0) continue;
      double mass = 0;
      std::uint64_t successors = 0;
      for (LocationId n = 0; n < 6; ++n) {
        mass += m.prob(l, n);
        successors += m.count(l, n);
      }
      EXPECT_LE(successors, m.count(l));
      EXPECT_NEAR(mass, double(successors) / double(m.count(l)), 1e-12);
      if (ends[l])
        EXPECT_LT(mass, 1.0);
      else
        EXPECT_NEAR(mass, 1.0, 1e-12);
    }
  }
}

TEST(MarkovTrain, PermutationInvariant) {
  std::mt19937_64 rng(17);
  auto d = random_dataset(rng, 40, 5);
  auto shuffled = d;
  std::shuffle(shuffled.trajectories.begin(), shuffled.trajectories.end(), rng);
  EXPECT_EQ(train_markov(d), train_markov(shuffled));
}

TEST(MarkovProb, AdditiveSmoothing) {
  auto m = train_markov(Dataset{{path({A, B, A})}, 3}, MarkovConfig{1.0});
  EXPECT_DOUBLE_EQ(m.prob(A, B), (1.0 + 1.0) / (2.0 + 3.0));
  EXPECT_DOUBLE_EQ(m.prob(C, A), 1.0 / 3.0);
}

TEST(MarkovPredict, TiesBreakByIndex) {
  Dataset d{{}, 9};
  for (int next : {9, 7, 5, 3}) d.trajectories.push_back(path({L(6), L(next)}));
  auto m = train_markov(d);
  std::vector<LocationId> cands{L(9), L(3), L(7), L(5)};
  auto ranking = markov_predict_topk(m, path({L(6)}), cands, 4);
  ASSERT_EQ(ranking.size(), 4u);
  EXPECT_EQ(ranking.entries[0].location, L(3));
  EXPECT_EQ(ranking.entries[1].location, L(5));
  EXPECT_EQ(ranking.entries[2].location, L(7));
  EXPECT_EQ(ranking.entries[3].location, L(9));
}

TEST(MarkovPredict, TopOneAndOversizedR) {
  Dataset d{{}, 3};
  for (int i = 0; i < 3; ++i) d.trajectories.push_back(path({A, B}));
  for (int i = 0; i < 2; ++i) d.trajectories.push_back(path({A, C}));
  auto m = train_markov(d);
  std::vector<LocationId> cands{B, C};
  auto top1 = markov_predict_topk(m, path({A}), cands, 1);
  ASSERT_EQ(top1.size(), 1u);
  EXPECT_EQ(top1.entries[0].location, B);
  EXPECT_DOUBLE_EQ(top1.entries[0].score, 0.6);
  EXPECT_EQ(markov_predict_topk(m, path({A}), cands, 10).size(), 2u);
  EXPECT_TRUE(markov_predict_topk(m, path({A}), {}, 3).empty());
  EXPECT_THROW(markov_predict_topk(m, path({A}), cands, 0), ConfigError);
}

TEST(MarkovCsv, RoundTripAndLayout) {
  auto m = train_markov(Dataset{{path({A, B, A}), path({C, B})}, 3});
  std::stringstream ss;
  write_markov(ss, m);
  EXPECT_EQ(ss.str(), "from,to,count\n0,1,1\n1,0,1\n2,1,1\nlocation,count\n0,2\n1,2\n2,1\n");
  EXPECT_EQ(read_markov(ss, 3), m);
}

TEST(MarkovCsv, RejectsBadInput) {
  auto read = [](const std::string &s) {
    std::istringstream in(s);
    return read_markov(in, 3);
  };
  EXPECT_THROW(read(""), ParseError);
  EXPECT_THROW(read("from,to,count\n0,1,1\n"), ParseError);
  EXPECT_THROW(read("from,to,count\n0,7,1\nlocation,count\n"), ParseError);
  EXPECT_THROW(read("location,count\n0,1\n"), ParseError);
  EXPECT_NO_THROW(read("from,to,count\nlocation,count\n"));
}
