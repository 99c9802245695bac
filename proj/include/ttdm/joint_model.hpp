/**
 * Linear interpolation of the Markov conditional and the TTDM
 * probability:
 *
 *   score(c) = lambda * p_mm(c | l_n) + (1 - lambda) * p_ttdm(c | T)
 *
 * evaluated over the graph-derived candidate set of l_n. Scores are not
 * renormalized.
 */

#ifndef TTDM_JOINT_MODEL_HPP_
#define TTDM_JOINT_MODEL_HPP_

#include "ttdm/markov_model.hpp"
#include "ttdm/ranking.hpp"
#include "ttdm/shortest_times.hpp"
#include "ttdm/transfer_graph.hpp"
#include "ttdm/ttdm_model.hpp"

#include <span>
#include <string>

namespace ttdm {

inline constexpr double kDefaultLambda = 0.3;

struct JointConfig {
  double lambda = kDefaultLambda;
  void validate() const;
};

double joint_prob(const Trajectory &trajectory, LocationId candidate, const MarkovModel &markov,
                  const TtdmScores &ttdm_scores, double lambda);

/** Everything needed to answer a query. */
struct TrainedModels {
  TransferGraphs graphs;
  ShortestTimeTable table;
  MarkovModel markov;
  InverseFunction f;
};

PredictionRanking joint_predict_topk(const Trajectory &trajectory, std::span<const LocationId> candidates,
                                     const TrainedModels &models, double lambda, std::size_t r);

enum class Method { markov, ttdm, joint };

std::string method_name(Method method);

/**
 * Ranks the candidate next locations of the trajectory's last location
 * with the given method. r = 0 returns the full ranking.
 */
PredictionRanking rank_next(const TrainedModels &models, Method method, double lambda,
                            const Trajectory &prefix, std::size_t r = 0);

}  // namespace ttdm

#endif  // TTDM_JOINT_MODEL_HPP_
