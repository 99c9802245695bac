/**
 * Travel time difference scoring of candidate next locations.
 *
 * For a query prefix T = (l_1,t_1)...(l_n,t_n) and candidate c, the
 * summed shortest times from every passed location to c are compared
 * with the summed times actually spent along T plus the expected final
 * hop. Candidates whose per-point difference is small are the ones a
 * time-efficient traveller would plausibly be heading for.
 */

#ifndef TTDM_TTDM_MODEL_HPP_
#define TTDM_TTDM_MODEL_HPP_

#include "ttdm/ranking.hpp"
#include "ttdm/shortest_times.hpp"
#include "ttdm/transfer_graph.hpp"
#include "ttdm/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace ttdm {

/** Strictly decreasing map from travel time difference to plausibility. */
struct InverseFunction {
  enum class Kind { reciprocal, negative_exponential };

  Kind kind = Kind::reciprocal;
  /** Lower clamp on the argument, seconds. */
  Seconds epsilon = 1.0;

  /**
   * f(max(x, epsilon)). Reciprocal is 1/x with x in seconds; the
   * exponential form works in minutes, exp(-x/60), to stay in range.
   */
  double operator()(Seconds x) const;

  void validate() const;
  static Kind parse_kind(const std::string &name);
  static std::string kind_name(Kind kind);
};

struct TtdmScore {
  LocationId candidate = 0;
  Seconds sum_shortest = 0;
  Seconds sum_actual = 0;
  /** (sum_actual - sum_shortest) / n; +infinity when unreachable. */
  Seconds diff_per_point = 0;
  double probability = 0;
};

struct TtdmScores {
  std::vector<TtdmScore> scores;
  /** Every candidate was unreachable; probabilities are uniform. */
  bool fallback = false;
};

/**
 * Time from passed point `i` (zero-based) to `candidate` along the
 * trajectory: t_n - t_i plus the mean hop time l_n -> candidate in the
 * slot of t_n (all-slot mean when that slot lacks the hop). Throws Error
 * when the hop was never observed.
 */
Seconds actual_travel_time(const Trajectory &trajectory, std::size_t i, LocationId candidate,
                           const TransferGraphs &graphs);

/** Sum over passed points of the shortest time to `candidate` in each point's slot. */
Seconds sum_shortest(const Trajectory &trajectory, LocationId candidate, const ShortestTimeTable &table,
                     const SlotConfig &slots);

Seconds sum_actual(const Trajectory &trajectory, LocationId candidate, const TransferGraphs &graphs);

/**
 * Normalized TTDM probabilities. Unreachable candidates get 0; if all
 * are unreachable the result is uniform and flagged as fallback.
 */
TtdmScores score_candidates(const Trajectory &trajectory, std::span<const LocationId> candidates,
                            const ShortestTimeTable &table, const TransferGraphs &graphs,
                            const InverseFunction &f);

PredictionRanking ttdm_predict_topk(const Trajectory &trajectory, std::span<const LocationId> candidates,
                                    const ShortestTimeTable &table, const TransferGraphs &graphs,
                                    const InverseFunction &f, std::size_t r);

}  // namespace ttdm

#endif  // TTDM_TTDM_MODEL_HPP_
