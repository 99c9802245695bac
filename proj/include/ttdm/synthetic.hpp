/**
 * Grid-city generator with destination-driven agents.
 *
 * Cells of a rows x cols grid are locations named l1..lN in row-major
 * order, joined to their 4-connected neighbours by edges of
 * `edge_seconds`. Each trip walks from a random origin to a random
 * destination; with probability `shortest_path_fidelity` a step moves
 * closer to the destination, otherwise it goes to a random neighbour.
 * Step durations are edge_seconds scaled by U[1 - noise, 1 + noise] and
 * rounded to whole seconds (minimum 1).
 */

#ifndef TTDM_SYNTHETIC_HPP_
#define TTDM_SYNTHETIC_HPP_

#include "ttdm/trajectory_data.hpp"
#include "ttdm/transfer_graph.hpp"
#include "ttdm/types.hpp"

#include <cstdint>
#include <vector>

namespace ttdm {

struct GridSpec {
  std::size_t rows = 3;
  std::size_t cols = 3;
  Seconds edge_seconds = 60;
  double noise = 0;
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t cells() const { return rows * cols; }
  LocationId cell(std::size_t row, std::size_t col) const { return static_cast<LocationId>(row * cols + col); }
};

struct AgentSpec {
  std::size_t n_agents = 100;
  std::size_t trips_per_agent = 4;
  double shortest_path_fidelity = 1.0;
  /**
   * Zipf exponent of destination popularity. The k-th most popular cell
   * (order drawn from the grid seed) is chosen with weight 1/k^skew; 0 makes
   * destinations uniform. Origins are always uniform.
   */
  double destination_skew = 1.0;

  void validate() const;
};

struct SyntheticWorld {
  /** Names l1..lN, index = cell id. */
  LocationIndex locations;
  /** All visits, grouped by agent and time-ordered within an agent. */
  std::vector<Record> records;
  /** One trajectory per trip, indexed by cell id. */
  Dataset dataset;
  /** Uniform edge_seconds grid the agents move on. */
  TransferGraph truth;
};

/** 4-connected grid with every edge weighted edge_seconds. */
TransferGraph grid_graph(const GridSpec &grid);

/** Deterministic for a fixed grid.seed. Consecutive trips of an agent are separated by 2-6 hours. */
SyntheticWorld generate(const GridSpec &grid, const AgentSpec &agents);

}  // namespace ttdm

#endif  // TTDM_SYNTHETIC_HPP_
