/**
 * All-pairs shortest travel times per slot graph.
 *
 * Only the single shortest time between two locations is needed, so the
 * table is filled by a Dijkstra search from every origin. Unreachable
 * pairs hold kUnreachable (+infinity).
 */

#ifndef TTDM_SHORTEST_TIMES_HPP_
#define TTDM_SHORTEST_TIMES_HPP_

#include "ttdm/transfer_graph.hpp"
#include "ttdm/types.hpp"

#include <iosfwd>
#include <vector>

namespace ttdm {

class ShortestTimeTable {
 public:
  ShortestTimeTable() = default;
  ShortestTimeTable(std::size_t location_count, std::size_t slot_count);

  /**
   * Shortest time from origin to dest in slot k. Zero on the diagonal of
   * known locations; kUnreachable for unknown locations or slots.
   */
  Seconds lookup(SlotIndex k, LocationId origin, LocationId dest) const {
    if (origin >= location_count_ || dest >= location_count_ || k >= slots_.size())
      return kUnreachable;
    const auto &m = slots_[k];
    if (m.empty()) return origin == dest ? 0.0 : kUnreachable;
    return m[static_cast<std::size_t>(origin) * location_count_ + dest];
  }

  std::size_t location_count() const { return location_count_; }
  std::size_t slot_count() const { return slots_.size(); }
  /** False when slot k had no edges and only self-distances are defined. */
  bool slot_populated(SlotIndex k) const { return k < slots_.size() && !slots_[k].empty(); }

  /** Replaces slot k with a row-major location_count^2 matrix, or clears it when empty. */
  void set_slot(SlotIndex k, std::vector<Seconds> matrix);

  /** Bitwise equality of every lookup value. */
  bool operator==(const ShortestTimeTable &other) const;

 private:
  std::size_t location_count_ = 0;
  std::vector<std::vector<Seconds>> slots_;
};

/** Shortest times from `origin` to every location of `graph`. */
std::vector<Seconds> single_source_times(const TransferGraph &graph, LocationId origin);

ShortestTimeTable precompute(const TransferGraphs &graphs);

/** Single-slot convenience used for standalone graphs. */
ShortestTimeTable precompute(const TransferGraph &graph);

/**
 * Table CSV: `slot,origin,dest,seconds`, every (slot, origin, dest)
 * triple in ascending order, unreachable written as `inf`. Values
 * round-trip bit-exactly.
 */
void write_table(std::ostream &out, const ShortestTimeTable &table);

/** Throws ParseError whose position is the byte offset of the bad row. */
ShortestTimeTable read_table(std::istream &in);

}  // namespace ttdm

#endif  // TTDM_SHORTEST_TIMES_HPP_
