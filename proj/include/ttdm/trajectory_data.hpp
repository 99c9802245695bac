/**
 * Raw record parsing, sessionization into trajectories, length filtering
 * and the train/test split.
 */

#ifndef TTDM_TRAJECTORY_DATA_HPP_
#define TTDM_TRAJECTORY_DATA_HPP_

#include "ttdm/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ttdm {

/**
 * Interns location names to dense indices in first-seen order.
 */
class LocationIndex {
 public:
  LocationId intern(std::string_view name);
  std::optional<LocationId> find(std::string_view name) const;
  const std::string &name(LocationId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string> &names() const { return names_; }

  bool operator==(const LocationIndex &other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LocationId> ids_;
};

struct SplitConfig {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;

  /** Throws ConfigError unless 0 < train_fraction < 1. */
  void validate() const;
};

inline constexpr Timestamp kDefaultSessionGap = 1800;
inline constexpr std::size_t kDefaultMinLength = 3;

/**
 * Parses the records CSV (`user,location,timestamp`). Location names are
 * interned into `locations`. Throws ParseError carrying the 1-based line
 * number of the offending row.
 */
std::vector<Record> parse_records(std::istream &in, LocationIndex &locations);

void write_records(std::ostream &out, const std::vector<Record> &records,
                   const LocationIndex &locations);

/**
 * Groups records by user and splits each user's time-sorted stream
 * wherever consecutive records are more than `gap` seconds apart.
 * Output is ordered by user, then by time. Ties keep input order.
 */
std::vector<Trajectory> sessionize(const std::vector<Record> &records, Timestamp gap);

std::vector<Trajectory> filter_min_length(std::vector<Trajectory> trajectories,
                                          std::size_t min_len = kDefaultMinLength);

/**
 * Shuffles with a seeded generator and takes round(fraction * N)
 * trajectories for training. Each side keeps the input's relative order.
 */
std::pair<Dataset, Dataset> split(const Dataset &dataset, const SplitConfig &config);

// Trajectory JSON-lines: {"user": "...", "points": [["<location name>", <seconds>], ...]}
void write_trajectories(std::ostream &out, const std::vector<Trajectory> &trajectories,
                        const LocationIndex &locations);
std::vector<Trajectory> read_trajectories(std::istream &in, const LocationIndex &locations);

// Location index file: `index,name`, one row per location in index order.
void write_locations(std::ostream &out, const LocationIndex &locations);
LocationIndex read_locations(std::istream &in);

}  // namespace ttdm

#endif  // TTDM_TRAJECTORY_DATA_HPP_
