#include "ttdm/ttdm_model.hpp"

#include "ttdm/error.hpp"

#include <algorithm>
#include <cmath>

namespace ttdm {

namespace {
constexpr double kSecondsPerMinute = 60.0;
}

double InverseFunction::operator()(Seconds x) const {
  const Seconds clamped = std::max(x, epsilon);
  switch (kind) {
    case Kind::reciprocal:
      return 1.0 / clamped;
    case Kind::negative_exponential:
      return std::exp(-clamped / kSecondsPerMinute);
  }
  return 0.0;
}

void InverseFunction::validate() const {
  if (!(epsilon > 0) || std::isinf(epsilon)) throw ConfigError("epsilon", "must be positive and finite");
}

InverseFunction::Kind InverseFunction::parse_kind(const std::string &name) {
  if (name == "reciprocal") return Kind::reciprocal;
  if (name == "negexp" || name == "negative_exponential") return Kind::negative_exponential;
  throw ConfigError("f", "unknown inverse function '" + name + "' (reciprocal|negexp)");
}

std::string InverseFunction::kind_name(Kind kind) {
  return kind == Kind::reciprocal ? "reciprocal" : "negexp";
}

Seconds actual_travel_time(const Trajectory &trajectory, std::size_t i, LocationId candidate,
                           const TransferGraphs &graphs) {
  if (i >= trajectory.size()) throw Error("passed index out of range");
  const auto &last = trajectory.back();
  auto hop = graphs.hop_seconds(slot_of(last.time, graphs.config), last.location, candidate);
  if (!hop) throw Error("candidate is not adjacent to the current location in any slot");
  return static_cast<Seconds>(last.time - trajectory.points[i].time) + *hop;
}

Seconds sum_shortest(const Trajectory &trajectory, LocationId candidate, const ShortestTimeTable &table,
                     const SlotConfig &slots) {
  Seconds sum = 0;
  for (const auto &p : trajectory.points) sum += table.lookup(slot_of(p.time, slots), p.location, candidate);
  return sum;
}

Seconds sum_actual(const Trajectory &trajectory, LocationId candidate, const TransferGraphs &graphs) {
  Seconds sum = 0;
  for (std::size_t i = 0; i < trajectory.size(); ++i) sum += actual_travel_time(trajectory, i, candidate, graphs);
  return sum;
}

TtdmScores score_candidates(const Trajectory &trajectory, std::span<const LocationId> candidates,
                            const ShortestTimeTable &table, const TransferGraphs &graphs,
                            const InverseFunction &f) {
  TtdmScores out;
  if (candidates.empty() || trajectory.empty()) return out;
  const double n = static_cast<double>(trajectory.size());

  Seconds min_clamped = kUnreachable;
  for (LocationId c : candidates) {
    TtdmScore s;
    s.candidate = c;
    s.sum_shortest = sum_shortest(trajectory, c, table, graphs.config);
    s.sum_actual = sum_actual(trajectory, c, graphs);
    s.diff_per_point = std::isinf(s.sum_shortest) ? kUnreachable : (s.sum_actual - s.sum_shortest) / n;
    min_clamped = std::min(min_clamped, std::max(s.diff_per_point, f.epsilon));
    out.scores.push_back(s);
  }

  if (std::isinf(min_clamped)) {
    out.fallback = true;
    for (auto &s : out.scores) s.probability = 1.0 / static_cast<double>(out.scores.size());
    return out;
  }

  // exp(-x/60) is shift-invariant under normalization; shifting by the
  // smallest argument keeps the largest term at 1 instead of underflowing.
  const bool shift = f.kind == InverseFunction::Kind::negative_exponential;
  double z = 0;
  for (auto &s : out.scores) {
    if (std::isinf(s.diff_per_point)) {
      s.probability = 0;
      continue;
    }
    s.probability = shift ? std::exp(-(std::max(s.diff_per_point, f.epsilon) - min_clamped) / kSecondsPerMinute)
                          : f(s.diff_per_point);
    z += s.probability;
  }
  for (auto &s : out.scores) s.probability /= z;
  return out;
}

PredictionRanking ttdm_predict_topk(const Trajectory &trajectory, std::span<const LocationId> candidates,
                                    const ShortestTimeTable &table, const TransferGraphs &graphs,
                                    const InverseFunction &f, std::size_t r) {
  if (r < 1) throw ConfigError("r", "must be at least 1");
  auto scored = score_candidates(trajectory, candidates, table, graphs, f);
  std::vector<RankedCandidate> entries;
  entries.reserve(scored.scores.size());
  for (const auto &s : scored.scores) entries.push_back({s.candidate, s.probability});
  return make_ranking(std::move(entries), r, scored.fallback);
}

}  // namespace ttdm
