#include "ttdm/ranking.hpp"

#include <algorithm>

namespace ttdm {

std::optional<std::size_t> PredictionRanking::rank_of(LocationId location) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].location == location) return i + 1;
  return std::nullopt;
}

PredictionRanking make_ranking(std::vector<RankedCandidate> entries, std::size_t r, bool fallback) {
  std::sort(entries.begin(), entries.end(), [](const RankedCandidate &a, const RankedCandidate &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.location < b.location;
  });
  if (r != 0 && entries.size() > r) entries.resize(r);
  return PredictionRanking{std::move(entries), fallback};
}

}  // namespace ttdm
