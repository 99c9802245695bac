#ifndef TTDM_RANKING_HPP_
#define TTDM_RANKING_HPP_

#include "ttdm/types.hpp"

#include <optional>
#include <vector>

namespace ttdm {

struct RankedCandidate {
  LocationId location = 0;
  double score = 0;

  bool operator==(const RankedCandidate &) const = default;
};

/**
 * Candidates ordered by score descending, ties by ascending location.
 * `fallback` marks a ranking whose scores carry no information (e.g. every
 * TTDM candidate unreachable).
 */
struct PredictionRanking {
  std::vector<RankedCandidate> entries;
  bool fallback = false;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  /** 1-based rank of `location`, if present. */
  std::optional<std::size_t> rank_of(LocationId location) const;

  bool operator==(const PredictionRanking &) const = default;
};

/** Sorts into canonical order and keeps the first `r` entries (r = 0 keeps all). */
PredictionRanking make_ranking(std::vector<RankedCandidate> entries, std::size_t r, bool fallback = false);

}  // namespace ttdm

#endif  // TTDM_RANKING_HPP_
