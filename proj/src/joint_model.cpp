#include "ttdm/joint_model.hpp"

#include "ttdm/error.hpp"

#include <algorithm>

namespace ttdm {

void JointConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda", "must lie in [0, 1]");
}

double joint_prob(const Trajectory &trajectory, LocationId candidate, const MarkovModel &markov,
                  const TtdmScores &ttdm_scores, double lambda) {
  auto it = std::find_if(ttdm_scores.scores.begin(), ttdm_scores.scores.end(),
                         [&](const TtdmScore &s) { return s.candidate == candidate; });
  if (it == ttdm_scores.scores.end()) throw Error("candidate missing from TTDM scores");
  if (trajectory.empty()) throw Error("empty trajectory");
  return lambda * markov.prob(trajectory.back().location, candidate) + (1.0 - lambda) * it->probability;
}

PredictionRanking joint_predict_topk(const Trajectory &trajectory, std::span<const LocationId> candidates,
                                     const TrainedModels &models, double lambda, std::size_t r) {
  if (r < 1) throw ConfigError("r", "must be at least 1");
  JointConfig{lambda}.validate();
  if (candidates.empty() || trajectory.empty()) return {};
  auto scored = score_candidates(trajectory, candidates, models.table, models.graphs, models.f);
  const LocationId current = trajectory.back().location;
  std::vector<RankedCandidate> entries;
  entries.reserve(scored.scores.size());
  for (const auto &s : scored.scores)
    entries.push_back({s.candidate, lambda * models.markov.prob(current, s.candidate) + (1.0 - lambda) * s.probability});
  return make_ranking(std::move(entries), r);
}

std::string method_name(Method method) {
  switch (method) {
    case Method::markov:
      return "MM";
    case Method::ttdm:
      return "TTDM";
    case Method::joint:
      return "TTDM+MM";
  }
  return "?";
}

PredictionRanking rank_next(const TrainedModels &models, Method method, double lambda,
                            const Trajectory &prefix, std::size_t r) {
  if (prefix.empty()) return {};
  auto candidates = candidate_next_locations(models.graphs, prefix.back().location);
  if (candidates.empty()) return {};
  const std::size_t cutoff = r == 0 ? candidates.size() : r;
  switch (method) {
    case Method::markov:
      return markov_predict_topk(models.markov, prefix, candidates, cutoff);
    case Method::ttdm:
      return ttdm_predict_topk(prefix, candidates, models.table, models.graphs, models.f, cutoff);
    case Method::joint:
      return joint_predict_topk(prefix, candidates, models, lambda, cutoff);
  }
  return {};
}

}  // namespace ttdm
