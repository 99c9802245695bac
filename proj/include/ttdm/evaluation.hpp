/**
 * Top-r accuracy and average precision over held-out trajectories.
 *
 * acc = mean over queries of [w <= r]; ap = mean of [w <= r] / w, where
 * w is the 1-based rank of the true next location in the full candidate
 * ranking. Queries whose truth is not a candidate, or that have no
 * candidates at all, count as misses.
 */

#ifndef TTDM_EVALUATION_HPP_
#define TTDM_EVALUATION_HPP_

#include "ttdm/joint_model.hpp"
#include "ttdm/ranking.hpp"
#include "ttdm/types.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ttdm {

struct EvalQuery {
  Trajectory prefix;
  LocationId truth = 0;
};

struct EvalResult {
  std::size_t r = 0;
  double acc = 0;
  double ap = 0;
  std::size_t n_queries = 0;
  /** Queries with an empty candidate set (also counted as misses). */
  std::size_t n_skipped = 0;

  bool operator==(const EvalResult &) const = default;
};

/** Rank of the truth for one query; nullopt when it is not ranked. */
struct QueryOutcome {
  std::optional<std::size_t> rank;
  bool skipped = false;
};

/** Produces the full (untruncated) ranking for a query prefix. */
using Predictor = std::function<PredictionRanking(const Trajectory &)>;

/** One query per trajectory of length >= 2: all points but the last, and the last location. */
std::vector<EvalQuery> make_queries(const Dataset &test);

std::vector<QueryOutcome> rank_queries(std::span<const EvalQuery> queries, const Predictor &predictor);

EvalResult score_outcomes(std::span<const QueryOutcome> outcomes, std::size_t r);

EvalResult evaluate(std::span<const EvalQuery> queries, const Predictor &predictor, std::size_t r);

/** Predictor backed by rank_next. */
Predictor make_predictor(const TrainedModels &models, Method method, double lambda);

struct ResultRow {
  std::string model;
  double lambda = 0;
  EvalResult result;
};

/** {0, step, 2*step, ..., 1}, each value computed as i / steps. */
std::vector<double> lambda_grid(std::size_t steps = 10);

/** Joint-model results for every (lambda, r) pair, lambda-major. */
std::vector<ResultRow> lambda_sweep(std::span<const EvalQuery> queries, const TrainedModels &models,
                                    std::span<const double> lambdas, std::span<const std::size_t> rs);

/**
 * MM, TTDM and joint (at `lambda`) results for every r. MM rows carry
 * lambda 1 and TTDM rows lambda 0.
 */
std::vector<ResultRow> compare_methods(std::span<const EvalQuery> queries, const TrainedModels &models,
                                       double lambda, std::span<const std::size_t> rs);

/**
 * Runs `evaluation` `runs` times and averages each metric position-wise.
 * Counts are taken from the first run.
 */
std::vector<EvalResult> run_repeated(const std::function<std::vector<EvalResult>()> &evaluation,
                                     std::size_t runs);

// Results CSV: `model,lambda,r,acc,ap,n_queries,n_skipped`.
void write_results(std::ostream &out, std::span<const ResultRow> rows);

}  // namespace ttdm

#endif  // TTDM_EVALUATION_HPP_
