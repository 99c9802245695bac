#include "ttdm/transfer_graph.hpp"

#include "ttdm/error.hpp"
#include "ttdm/parallel.hpp"
#include "ttdm/text.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>

namespace ttdm {

void SlotConfig::validate() const {
  if (slot_seconds <= 0 || kSecondsPerDay % slot_seconds != 0)
    throw ConfigError("slot_seconds", "must be a positive divisor of 86400");
}

SlotIndex slot_of(Timestamp time, const SlotConfig &config) {
  Timestamp of_day = ((time % kSecondsPerDay) + kSecondsPerDay) % kSecondsPerDay;
  return static_cast<SlotIndex>(of_day / config.slot_seconds);
}

TransferGraph TransferGraph::from_stats(std::size_t location_count,
                                        std::span<const SegmentStats> stats) {
  TransferGraph g(location_count);
  for (const auto &s : stats) g.adjacency_.at(s.from).push_back(Edge{s.to, s.average(), s.count});
  for (auto &edges : g.adjacency_)
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) { return a.to < b.to; });
  return g;
}

void TransferGraph::set_edge(LocationId from, LocationId to, Seconds avg_seconds, std::uint64_t count) {
  std::size_t needed = std::max<std::size_t>(from, to) + 1;
  if (adjacency_.size() < needed) adjacency_.resize(needed);
  auto &edges = adjacency_[from];
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const Edge &e, LocationId t) { return e.to < t; });
  if (it != edges.end() && it->to == to) {
    it->avg_seconds = avg_seconds;
    it->count = count;
  } else {
    edges.insert(it, Edge{to, avg_seconds, count});
  }
}

std::span<const TransferGraph::Edge> TransferGraph::out_edges(LocationId from) const {
  if (from >= adjacency_.size()) return {};
  return adjacency_[from];
}

std::optional<Seconds> TransferGraph::weight(LocationId from, LocationId to) const {
  auto edges = out_edges(from);
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const Edge &e, LocationId t) { return e.to < t; });
  if (it == edges.end() || it->to != to) return std::nullopt;
  return it->avg_seconds;
}

std::size_t TransferGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto &edges : adjacency_) n += edges.size();
  return n;
}

std::optional<Seconds> TransferGraphs::hop_seconds(SlotIndex k, LocationId from, LocationId to) const {
  if (k < slots.size()) {
    if (auto w = slots[k].weight(from, to)) return w;
  }
  return aggregate.weight(from, to);
}

GraphBuilder::GraphBuilder(std::size_t location_count, const SlotConfig &config)
    : location_count_(location_count), config_(config) {
  config_.validate();
  per_slot_.resize(config_.slots_per_day());
}

void GraphBuilder::add(const Trajectory &trajectory) {
  const auto &pts = trajectory.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Timestamp dt = pts[i + 1].time - pts[i].time;
    if (dt < 0) {
      ++dropped_negative_;
      continue;
    }
    auto &slot = per_slot_[slot_of(pts[i].time, config_)];
    auto [it, inserted] = slot.try_emplace(Key{pts[i].location, pts[i + 1].location},
                                           SegmentStats{pts[i].location, pts[i + 1].location, 0, 0});
    it->second.total_time += static_cast<Seconds>(dt);
    it->second.count += 1;
    location_count_ = std::max<std::size_t>(
        location_count_, std::max(pts[i].location, pts[i + 1].location) + std::size_t{1});
  }
}

void GraphBuilder::merge(const GraphBuilder &other) {
  location_count_ = std::max(location_count_, other.location_count_);
  dropped_negative_ += other.dropped_negative_;
  for (std::size_t k = 0; k < per_slot_.size(); ++k) {
    for (const auto &[key, stats] : other.per_slot_.at(k)) {
      auto [it, inserted] = per_slot_[k].try_emplace(key, SegmentStats{key.first, key.second, 0, 0});
      it->second.total_time += stats.total_time;
      it->second.count += stats.count;
    }
  }
}

TransferGraphs GraphBuilder::finish() const {
  TransferGraphs out;
  out.config = config_;
  out.dropped_negative = dropped_negative_;
  std::map<Key, SegmentStats> all;
  std::vector<SegmentStats> stats;
  for (const auto &slot : per_slot_) {
    stats.clear();
    for (const auto &[key, s] : slot) {
      stats.push_back(s);
      auto [it, inserted] = all.try_emplace(key, SegmentStats{key.first, key.second, 0, 0});
      it->second.total_time += s.total_time;
      it->second.count += s.count;
    }
    out.slots.push_back(TransferGraph::from_stats(location_count_, stats));
  }
  stats.clear();
  for (const auto &[key, s] : all) stats.push_back(s);
  out.aggregate = TransferGraph::from_stats(location_count_, stats);
  return out;
}

TransferGraphs build_graphs(const Dataset &train, const SlotConfig &config) {
  config.validate();
  const auto &trajs = train.trajectories;
  constexpr std::size_t kChunk = 4096;
  std::size_t chunks = (trajs.size() + kChunk - 1) / kChunk;
  std::vector<GraphBuilder> partial(std::max<std::size_t>(chunks, 1),
                                    GraphBuilder(train.location_count, config));
  parallel_for(chunks, [&](std::size_t c) {
    std::size_t end = std::min(trajs.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) partial[c].add(trajs[i]);
  });
  // Durations are integral, so the sums are exact whatever the merge order.
  for (std::size_t c = 1; c < partial.size(); ++c) partial[0].merge(partial[c]);
  return partial[0].finish();
}

std::vector<LocationId> candidate_next_locations(const TransferGraphs &graphs, LocationId l) {
  std::vector<LocationId> out;
  for (const auto &e : graphs.aggregate.out_edges(l)) out.push_back(e.to);
  return out;
}

double CandidateCountCdf::fraction_above(std::size_t k) const {
  double at_most = 0;
  for (const auto &[count, cum] : steps)
    if (count <= k) at_most = cum;
  return locations == 0 ? 0.0 : 1.0 - at_most;
}

CandidateCountCdf candidate_count_cdf(const TransferGraphs &graphs) {
  const auto &g = graphs.aggregate;
  std::vector<bool> present(g.location_count(), false);
  for (LocationId l = 0; l < g.location_count(); ++l) {
    for (const auto &e : g.out_edges(l)) {
      present[l] = true;
      present[e.to] = true;
    }
  }
  std::map<std::size_t, std::size_t> histogram;
  CandidateCountCdf cdf;
  double total = 0;
  for (LocationId l = 0; l < g.location_count(); ++l) {
    if (!present[l]) continue;
    std::size_t c = g.out_edges(l).size();
    ++histogram[c];
    ++cdf.locations;
    total += static_cast<double>(c);
  }
  if (cdf.locations == 0) return cdf;
  std::size_t running = 0;
  for (const auto &[count, n] : histogram) {
    running += n;
    cdf.steps.emplace_back(count, static_cast<double>(running) / static_cast<double>(cdf.locations));
  }
  cdf.mean = total / static_cast<double>(cdf.locations);
  return cdf;
}

void write_graphs(std::ostream &out, const TransferGraphs &graphs) {
  out << "slot,from,to,avg_seconds,count\n";
  for (std::size_t k = 0; k < graphs.slots.size(); ++k) {
    const auto &g = graphs.slots[k];
    for (LocationId from = 0; from < g.location_count(); ++from)
      for (const auto &e : g.out_edges(from))
        out << k << ',' << from << ',' << e.to << ',' << text::format_double(e.avg_seconds) << ','
            << e.count << '\n';
  }
}

TransferGraphs read_graphs(std::istream &in, const SlotConfig &config, std::size_t location_count) {
  config.validate();
  struct Row {
    SegmentStats stats;
    Seconds avg;
  };
  std::vector<std::vector<Row>> per_slot(config.slots_per_day());
  std::string line;
  std::size_t line_no = 0;
  std::tuple<std::size_t, LocationId, LocationId> prev{0, 0, 0};
  bool have_prev = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = text::strip_cr(line);
    if (line_no == 1) {
      if (row != "slot,from,to,avg_seconds,count")
        throw ParseError("line 1: expected header 'slot,from,to,avg_seconds,count'", 1);
      continue;
    }
    if (row.empty()) continue;
    auto fail = [&](const std::string &why) {
      return ParseError("line " + std::to_string(line_no) + ": " + why, line_no);
    };
    auto f = text::split(row, ',');
    if (f.size() != 5) throw fail("expected 5 fields");
    auto slot = text::parse_int<std::size_t>(f[0]);
    auto from = text::parse_int<LocationId>(f[1]);
    auto to = text::parse_int<LocationId>(f[2]);
    auto avg = text::parse_double(f[3]);
    auto count = text::parse_int<std::uint64_t>(f[4]);
    if (!slot || !from || !to || !avg || !count) throw fail("malformed field");
    if (*slot >= per_slot.size()) throw fail("slot out of range for slot_seconds");
    if (*from >= location_count || *to >= location_count) throw fail("location out of range");
    if (!(*avg >= 0) || std::isinf(*avg) || *count == 0) throw fail("invalid weight or count");
    std::tuple<std::size_t, LocationId, LocationId> key{*slot, *from, *to};
    if (have_prev && !(prev < key)) throw fail("rows not in strictly ascending (slot,from,to) order");
    prev = key;
    have_prev = true;
    per_slot[*slot].push_back(Row{SegmentStats{*from, *to, *avg * double(*count), *count}, *avg});
  }
  if (line_no == 0) throw ParseError("empty graph file", 0);

  TransferGraphs out;
  out.config = config;
  // Aggregate edges seen in a single slot reuse that slot's average verbatim.
  struct Merged {
    SegmentStats stats;
    Seconds avg = 0;
    std::size_t slots = 0;
  };
  std::map<std::pair<LocationId, LocationId>, Merged> all;
  for (const auto &rows : per_slot) {
    TransferGraph g(location_count);
    for (const auto &[s, avg] : rows) {
      g.set_edge(s.from, s.to, avg, s.count);
      auto &m = all[{s.from, s.to}];
      m.stats.from = s.from;
      m.stats.to = s.to;
      m.stats.total_time += s.total_time;
      m.stats.count += s.count;
      m.avg = avg;
      ++m.slots;
    }
    out.slots.push_back(std::move(g));
  }
  out.aggregate = TransferGraph(location_count);
  for (const auto &[key, m] : all)
    out.aggregate.set_edge(key.first, key.second, m.slots == 1 ? m.avg : m.stats.average(), m.stats.count);
  return out;
}

}  // namespace ttdm
