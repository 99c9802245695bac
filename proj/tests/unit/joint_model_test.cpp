#include "oracles.hpp"
#include "synthetic_fixture.hpp"

#include "ttdm/error.hpp"
#include "ttdm/joint_model.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace ttdm;
using ttdm::testing::L;

namespace {

const std::vector<LocationId> kIntroCandidates{L(3), L(5), L(7), L(9)};

TrainedModels intro_models_uniform_markov() {
  TrainedModels m;
  m.graphs = ttdm::testing::intro_graphs();
  m.table = precompute(m.graphs);
  m.markov = MarkovModel(9);
  m.markov.set_unigram(L(6), 4);
  for (LocationId c : kIntroCandidates) m.markov.set_bigram(L(6), c, 1);
  return m;
}

std::vector<std::pair<LocationId, double>> flatten(const PredictionRanking &r) {
  std::vector<std::pair<LocationId, double>> out;
  for (const auto &e : r.entries) out.emplace_back(e.location, e.score);
  return out;
}

const ttdm::testing::TrainedWorld &grid_world() {
  static const auto w = ttdm::testing::train_world(GridSpec{6, 6, 60, 0.1, 21}, AgentSpec{200, 4, 0.85});
  return w;
}

}  // namespace

TEST(JointConfig, LambdaRange) {
  EXPECT_NO_THROW(JointConfig{0}.validate());
  EXPECT_NO_THROW(JointConfig{1}.validate());
  EXPECT_THROW(JointConfig{-0.01}.validate(), ConfigError);
  EXPECT_THROW(JointConfig{1.5}.validate(), ConfigError);
}

TEST(JointProb, HalfwayArithmetic) {
  MarkovModel mm(3);
  mm.set_unigram(0, 4);
  mm.set_bigram(0, 1, 1);
  mm.set_bigram(0, 2, 3);
  TtdmScores ts;
  ts.scores.push_back({1, 0, 0, 0, 0.75});
  Trajectory q{"u", {{0, 0}}};
  EXPECT_DOUBLE_EQ(joint_prob(q, 1, mm, ts, 0.5), 0.5);
  EXPECT_EQ(joint_prob(q, 1, mm, ts, 1.0), 0.25);
  EXPECT_EQ(joint_prob(q, 1, mm, ts, 0.0), 0.75);
  EXPECT_THROW(joint_prob(q, 2, mm, ts, 0.5), Error);
}

TEST(JointPredict, UniformMarkovKeepsTtdmOrder) {
  auto m = intro_models_uniform_markov();
  auto q = ttdm::testing::intro_query();
  auto ttdm_order = ttdm_predict_topk(q, kIntroCandidates, m.table, m.graphs, m.f, 4);
  for (double lambda : {0.0, 0.1, 0.3, 0.5, 0.9, 0.99}) {
    auto joint = joint_predict_topk(q, kIntroCandidates, m, lambda, 4);
    ASSERT_EQ(joint.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(joint.entries[i].location, ttdm_order.entries[i].location);
  }
}

TEST(JointPredict, IntroExampleAtDefaultLambda) {
  auto m = intro_models_uniform_markov();
  auto joint = joint_predict_topk(ttdm::testing::intro_query(), kIntroCandidates, m, 0.3, 4);
  EXPECT_EQ(joint.entries[0].location, L(5));
  EXPECT_EQ(joint.entries[1].location, L(9));
  EXPECT_GT(joint.entries[1].score, joint.entries[2].score);
  // 0.3 * 0.25 + 0.7 * 0.3220858895705521
  EXPECT_NEAR(joint.entries[0].score, 0.3004601226993865, 1e-12);
}

TEST(JointPredict, EmptyCandidatesAndBadR) {
  auto m = intro_models_uniform_markov();
  EXPECT_TRUE(joint_predict_topk(ttdm::testing::intro_query(), {}, m, 0.3, 3).empty());
  EXPECT_THROW(joint_predict_topk(ttdm::testing::intro_query(), kIntroCandidates, m, 0.3, 0), ConfigError);
}

TEST(JointPredict, EndpointsMatchComponentRankingsExactly) {
  const auto &w = grid_world();
  ASSERT_FALSE(w.queries.empty());
  for (const auto &q : w.queries) {
    auto zero = rank_next(w.models, Method::joint, 0.0, q.prefix);
    auto one = rank_next(w.models, Method::joint, 1.0, q.prefix);
    EXPECT_EQ(flatten(zero), flatten(rank_next(w.models, Method::ttdm, 0.3, q.prefix)));
    EXPECT_EQ(flatten(one), flatten(rank_next(w.models, Method::markov, 0.3, q.prefix)));
  }
}

TEST(JointPredict, MassIsAffineInMarkovMass) {
  const auto &w = grid_world();
  for (const auto &q : w.queries) {
    const LocationId cur = q.prefix.back().location;
    auto cands = candidate_next_locations(w.models.graphs, cur);
    if (cands.empty()) continue;
    double markov_mass = 0;
    for (LocationId c : cands) markov_mass += w.models.markov.prob(cur, c);
    for (double lambda : {0.2, 0.3, 0.7}) {
      auto r = joint_predict_topk(q.prefix, cands, w.models, lambda, cands.size());
      double total = 0;
      for (const auto &e : r.entries) total += e.score;
      EXPECT_NEAR(total, lambda * markov_mass + (1 - lambda), 1e-9);
    }
  }
}

TEST(JointPredict, ScoreIsAffineInLambda) {
  const auto &w = grid_world();
  const auto &q = w.queries.front();
  auto at = [&](double lambda) {
    auto r = rank_next(w.models, Method::joint, lambda, q.prefix);
    std::map<LocationId, double> m;
    for (const auto &e : r.entries) m[e.location] = e.score;
    return m;
  };
  auto a = at(0.2), b = at(0.4), c = at(0.6);
  for (const auto &[loc, s] : a) EXPECT_NEAR(b[loc] - s, c[loc] - b[loc], 1e-12);
}

TEST(Method, Names) {
  EXPECT_EQ(method_name(Method::markov), "MM");
  EXPECT_EQ(method_name(Method::ttdm), "TTDM");
  EXPECT_EQ(method_name(Method::joint), "TTDM+MM");
}
