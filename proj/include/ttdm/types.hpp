#ifndef TTDM_TYPES_HPP_
#define TTDM_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ttdm {

/** Dense index of an interned location. */
using LocationId = std::uint32_t;

/** Integer seconds since the Unix epoch, UTC. */
using Timestamp = std::int64_t;

/** A travel time or duration in seconds. */
using Seconds = double;

/** Index of a time slot within a day, zero-based from 00:00 UTC. */
using SlotIndex = std::uint32_t;

inline constexpr Seconds kUnreachable = std::numeric_limits<Seconds>::infinity();

/** A single visit of a user to a location. */
struct Record {
  std::string user;
  LocationId location = 0;
  Timestamp time = 0;

  bool operator==(const Record &) const = default;
};

struct TrajectoryPoint {
  LocationId location = 0;
  Timestamp time = 0;

  bool operator==(const TrajectoryPoint &) const = default;
};

/**
 * Time-ordered sequence of visits by one user. Timestamps are
 * non-decreasing; ties keep their input order.
 */
struct Trajectory {
  std::string user;
  std::vector<TrajectoryPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  const TrajectoryPoint &back() const { return points.back(); }

  bool operator==(const Trajectory &) const = default;
};

/** Trajectories plus the size of the location index they refer to. */
struct Dataset {
  std::vector<Trajectory> trajectories;
  std::size_t location_count = 0;

  std::size_t size() const { return trajectories.size(); }
  bool empty() const { return trajectories.empty(); }

  bool operator==(const Dataset &) const = default;
};

}  // namespace ttdm

#endif  // TTDM_TYPES_HPP_
