#include "ttdm/trajectory_data.hpp"

#include "ttdm/error.hpp"
#include "ttdm/text.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

namespace ttdm {

LocationId LocationIndex::intern(std::string_view name) {
  std::string key(name);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<LocationId>(names_.size());
  names_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<LocationId> LocationIndex::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void SplitConfig::validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train_fraction", "must lie strictly between 0 and 1");
}

std::vector<Record> parse_records(std::istream &in, LocationIndex &locations) {
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = text::strip_cr(line);
    if (!seen_header) {
      if (row != "user,location,timestamp")
        throw ParseError("line 1: expected header 'user,location,timestamp'", line_no);
      seen_header = true;
      continue;
    }
    if (row.empty()) continue;
    auto fields = text::split(row, ',');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected 3 non-empty fields 'user,location,timestamp'",
                       line_no);
    auto time = text::parse_int<Timestamp>(fields[2]);
    if (!time)
      throw ParseError("line " + std::to_string(line_no) + ": timestamp '" +
                           std::string(fields[2]) + "' is not an integer",
                       line_no);
    if (*time < 0)
      throw ParseError("line " + std::to_string(line_no) + ": negative timestamp", line_no);
    records.push_back(Record{std::string(fields[0]), locations.intern(fields[1]), *time});
  }
  if (!seen_header) throw ParseError("line 1: missing header", 1);
  return records;
}

void write_records(std::ostream &out, const std::vector<Record> &records,
                   const LocationIndex &locations) {
  out << "user,location,timestamp\n";
  for (const auto &r : records)
    out << r.user << ',' << locations.name(r.location) << ',' << r.time << '\n';
}

std::vector<Trajectory> sessionize(const std::vector<Record> &records, Timestamp gap) {
  if (gap <= 0) throw ConfigError("gap", "must be positive");
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Record &ra = records[a];
    const Record &rb = records[b];
    if (ra.user != rb.user) return ra.user < rb.user;
    return ra.time < rb.time;
  });

  std::vector<Trajectory> out;
  const Record *prev = nullptr;
  for (std::size_t idx : order) {
    const Record &r = records[idx];
    if (prev == nullptr || prev->user != r.user || r.time - prev->time > gap)
      out.push_back(Trajectory{r.user, {}});
    out.back().points.push_back(TrajectoryPoint{r.location, r.time});
    prev = &r;
  }
  return out;
}

std::vector<Trajectory> filter_min_length(std::vector<Trajectory> trajectories,
                                          std::size_t min_len) {
  if (min_len < 1) throw ConfigError("min_len", "must be at least 1");
  std::erase_if(trajectories, [&](const Trajectory &t) { return t.size() < min_len; });
  return trajectories;
}

std::pair<Dataset, Dataset> split(const Dataset &dataset, const SplitConfig &config) {
  config.validate();
  const std::size_t n = dataset.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);
  std::shuffle(order.begin(), order.end(), rng);

  auto n_train = static_cast<std::size_t>(std::llround(config.train_fraction * double(n)));
  std::vector<bool> in_train(n, false);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;

  Dataset train{{}, dataset.location_count};
  Dataset test{{}, dataset.location_count};
  train.trajectories.reserve(n_train);
  test.trajectories.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i)
    (in_train[i] ? train : test).trajectories.push_back(dataset.trajectories[i]);
  return {std::move(train), std::move(test)};
}

void write_trajectories(std::ostream &out, const std::vector<Trajectory> &trajectories,
                        const LocationIndex &locations) {
  for (const auto &t : trajectories) {
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto &p : t.points) points.push_back({locations.name(p.location), p.time});
    nlohmann::ordered_json obj = {{"user", t.user}, {"points", std::move(points)}};
    out << obj.dump() << '\n';
  }
}

std::vector<Trajectory> read_trajectories(std::istream &in, const LocationIndex &locations) {
  std::vector<Trajectory> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::strip_cr(line).empty()) continue;
    auto fail = [&](const std::string &why) {
      return ParseError("line " + std::to_string(line_no) + ": " + why, line_no);
    };
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw fail(e.what());
    }
    if (!obj.is_object() || !obj.contains("user") || !obj.contains("points") ||
        !obj["user"].is_string() || !obj["points"].is_array())
      throw fail("expected {\"user\": <string>, \"points\": [...]}");
    Trajectory t{obj["user"].get<std::string>(), {}};
    for (const auto &p : obj["points"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_number_integer())
        throw fail("point must be [<location>, <seconds>]");
      auto id = locations.find(p[0].get<std::string>());
      if (!id) throw fail("unknown location '" + p[0].get<std::string>() + "'");
      t.points.push_back(TrajectoryPoint{*id, p[1].get<Timestamp>()});
    }
    out.push_back(std::move(t));
  }
  return out;
}

void write_locations(std::ostream &out, const LocationIndex &locations) {
  out << "index,name\n";
  for (std::size_t i = 0; i < locations.size(); ++i) out << i << ',' << locations.names()[i] << '\n';
}

LocationIndex read_locations(std::istream &in) {
  LocationIndex index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = text::strip_cr(line);
    if (line_no == 1) {
      if (row != "index,name") throw ParseError("line 1: expected header 'index,name'", 1);
      continue;
    }
    if (row.empty()) continue;
    auto comma = row.find(',');
    auto id = comma == std::string_view::npos
                  ? std::nullopt
                  : text::parse_int<std::size_t>(row.substr(0, comma));
    if (!id || *id != index.size() || comma + 1 >= row.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected '" +
                           std::to_string(index.size()) + ",<name>'",
                       line_no);
    std::string_view name = row.substr(comma + 1);
    if (index.find(name)) throw ParseError("line " + std::to_string(line_no) + ": duplicate name", line_no);
    index.intern(name);
  }
  if (line_no == 0) throw ParseError("empty location index", 0);
  return index;
}

}  // namespace ttdm
