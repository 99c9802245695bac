/**
 * Per-time-slot weighted location transfer graphs.
 *
 * Each directed edge carries the mean of the travel times observed for
 * that moving segment in training data, bucketed by the slot of the
 * departure (arrival at the origin) timestamp.
 */

#ifndef TTDM_TRANSFER_GRAPH_HPP_
#define TTDM_TRANSFER_GRAPH_HPP_

#include "ttdm/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ttdm {

inline constexpr Timestamp kSecondsPerDay = 86400;

struct SlotConfig {
  Timestamp slot_seconds = kSecondsPerDay;

  std::size_t slots_per_day() const { return static_cast<std::size_t>(kSecondsPerDay / slot_seconds); }
  /** Throws ConfigError unless slot_seconds > 0 and divides 86400. */
  void validate() const;
};

/** Slot containing `time`; slot 0 starts at 00:00 UTC. */
SlotIndex slot_of(Timestamp time, const SlotConfig &config);

/** Accumulated observations of one moving segment. */
struct SegmentStats {
  LocationId from = 0;
  LocationId to = 0;
  Seconds total_time = 0;
  std::uint64_t count = 0;

  Seconds average() const { return total_time / static_cast<double>(count); }
  bool operator==(const SegmentStats &) const = default;
};

class TransferGraph {
 public:
  struct Edge {
    LocationId to = 0;
    Seconds avg_seconds = 0;
    std::uint64_t count = 0;
    bool operator==(const Edge &) const = default;
  };

  TransferGraph() = default;
  explicit TransferGraph(std::size_t location_count) : adjacency_(location_count) {}

  /**
   * Builds from per-segment stats. Edge weights are total/count; the
   * outgoing list of every node is sorted by destination.
   */
  static TransferGraph from_stats(std::size_t location_count, std::span<const SegmentStats> stats);

  /** Inserts or replaces an edge with an explicit average. */
  void set_edge(LocationId from, LocationId to, Seconds avg_seconds, std::uint64_t count = 1);

  std::span<const Edge> out_edges(LocationId from) const;
  std::optional<Seconds> weight(LocationId from, LocationId to) const;
  std::size_t location_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  bool has_edges() const { return edge_count() > 0; }

  bool operator==(const TransferGraph &) const = default;

 private:
  std::vector<std::vector<Edge>> adjacency_;
};

/**
 * One graph per slot of the day plus the all-slot aggregate. Candidate
 * next locations come from the aggregate; travel times from the slots.
 */
struct TransferGraphs {
  SlotConfig config;
  std::vector<TransferGraph> slots;
  TransferGraph aggregate;
  /** Observations with negative duration skipped during the build. */
  std::size_t dropped_negative = 0;

  std::size_t location_count() const { return aggregate.location_count(); }
  const TransferGraph &slot(SlotIndex k) const { return slots.at(k); }
  /**
   * Average travel time of from->to in slot `k`, falling back to the
   * all-slot average when the slot never saw the segment.
   */
  std::optional<Seconds> hop_seconds(SlotIndex k, LocationId from, LocationId to) const;
};

/**
 * Accumulates segment observations; builders over disjoint trajectory
 * sets can be merged, and totals/counts add.
 */
class GraphBuilder {
 public:
  GraphBuilder(std::size_t location_count, const SlotConfig &config);

  void add(const Trajectory &trajectory);
  void merge(const GraphBuilder &other);
  TransferGraphs finish() const;

  std::size_t dropped_negative() const { return dropped_negative_; }

 private:
  using Key = std::pair<LocationId, LocationId>;
  std::size_t location_count_;
  SlotConfig config_;
  std::vector<std::map<Key, SegmentStats>> per_slot_;
  std::size_t dropped_negative_ = 0;
};

/** Builds all slot graphs from the training trajectories. */
TransferGraphs build_graphs(const Dataset &train, const SlotConfig &config);

/** Sorted out-neighbours of `l` across all slots; empty for unknown locations. */
std::vector<LocationId> candidate_next_locations(const TransferGraphs &graphs, LocationId l);

struct CandidateCountCdf {
  /** (candidate count, fraction of locations with at most that many), ascending. */
  std::vector<std::pair<std::size_t, double>> steps;
  double mean = 0;
  std::size_t locations = 0;

  /** Fraction of locations with strictly more than `k` candidates. */
  double fraction_above(std::size_t k) const;
};

/**
 * Distribution of candidate-set sizes over every location that appears
 * as an endpoint of some edge.
 */
CandidateCountCdf candidate_count_cdf(const TransferGraphs &graphs);

// Graph CSV: `slot,from,to,avg_seconds,count`, sorted by (slot, from, to).
void write_graphs(std::ostream &out, const TransferGraphs &graphs);
TransferGraphs read_graphs(std::istream &in, const SlotConfig &config, std::size_t location_count);

}  // namespace ttdm

#endif  // TTDM_TRANSFER_GRAPH_HPP_
