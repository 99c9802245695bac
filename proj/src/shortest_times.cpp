#include "ttdm/shortest_times.hpp"

#include "ttdm/error.hpp"
#include "ttdm/parallel.hpp"
#include "ttdm/text.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <string>

namespace ttdm {

ShortestTimeTable::ShortestTimeTable(std::size_t location_count, std::size_t slot_count)
    : location_count_(location_count), slots_(slot_count) {}

void ShortestTimeTable::set_slot(SlotIndex k, std::vector<Seconds> matrix) {
  if (k >= slots_.size()) slots_.resize(k + 1);
  if (!matrix.empty() && matrix.size() != location_count_ * location_count_)
    throw Error("slot matrix must hold location_count^2 entries");
  slots_[k] = std::move(matrix);
}

bool ShortestTimeTable::operator==(const ShortestTimeTable &other) const {
  if (location_count_ != other.location_count_ || slots_.size() != other.slots_.size()) return false;
  for (SlotIndex k = 0; k < slots_.size(); ++k)
    for (LocationId a = 0; a < location_count_; ++a)
      for (LocationId b = 0; b < location_count_; ++b)
        if (std::bit_cast<std::uint64_t>(lookup(k, a, b)) !=
            std::bit_cast<std::uint64_t>(other.lookup(k, a, b)))
          return false;
  return true;
}

std::vector<Seconds> single_source_times(const TransferGraph &graph, LocationId origin) {
  const std::size_t n = graph.location_count();
  std::vector<Seconds> dist(n, kUnreachable);
  if (origin >= n) return dist;
  using Entry = std::pair<Seconds, LocationId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[origin] = 0;
  heap.emplace(0.0, origin);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto &e : graph.out_edges(u)) {
      Seconds nd = d + e.avg_seconds;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        heap.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

namespace {

std::vector<Seconds> all_pairs(const TransferGraph &graph, std::size_t n) {
  std::vector<Seconds> matrix(n * n, kUnreachable);
  parallel_for(n, [&](std::size_t origin) {
    auto row = single_source_times(graph, static_cast<LocationId>(origin));
    std::copy(row.begin(), row.end(), matrix.begin() + static_cast<std::ptrdiff_t>(origin * n));
  });
  return matrix;
}

}  // namespace

ShortestTimeTable precompute(const TransferGraphs &graphs) {
  const std::size_t n = graphs.location_count();
  ShortestTimeTable table(n, graphs.slots.size());
  for (SlotIndex k = 0; k < graphs.slots.size(); ++k) {
    if (!graphs.slots[k].has_edges()) continue;
    table.set_slot(k, all_pairs(graphs.slots[k], n));
  }
  return table;
}

ShortestTimeTable precompute(const TransferGraph &graph) {
  const std::size_t n = graph.location_count();
  ShortestTimeTable table(n, 1);
  if (graph.has_edges()) table.set_slot(0, all_pairs(graph, n));
  return table;
}

void write_table(std::ostream &out, const ShortestTimeTable &table) {
  out << "slot,origin,dest,seconds\n";
  std::string buf;
  for (SlotIndex k = 0; k < table.slot_count(); ++k) {
    for (LocationId a = 0; a < table.location_count(); ++a) {
      buf.clear();
      for (LocationId b = 0; b < table.location_count(); ++b) {
        buf += std::to_string(k);
        buf += ',';
        buf += std::to_string(a);
        buf += ',';
        buf += std::to_string(b);
        buf += ',';
        buf += text::format_double(table.lookup(k, a, b));
        buf += '\n';
      }
      out << buf;
    }
  }
}

ShortestTimeTable read_table(std::istream &in) {
  std::string line;
  std::size_t offset = 0;
  auto fail = [&](const std::string &why) {
    return ParseError("byte offset " + std::to_string(offset) + ": " + why, offset);
  };
  if (!std::getline(in, line)) throw fail("empty table file");
  if (text::strip_cr(line) != "slot,origin,dest,seconds")
    throw fail("expected header 'slot,origin,dest,seconds'");
  offset += line.size() + 1;

  struct Row {
    std::size_t slot, origin, dest;
    Seconds seconds;
    std::size_t offset;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::string_view row = text::strip_cr(line);
    if (!row.empty()) {
      auto f = text::split(row, ',');
      if (f.size() != 4) throw fail("expected 4 fields");
      auto slot = text::parse_int<std::size_t>(f[0]);
      auto origin = text::parse_int<std::size_t>(f[1]);
      auto dest = text::parse_int<std::size_t>(f[2]);
      auto seconds = text::parse_double(f[3]);
      if (!slot || !origin || !dest || !seconds) throw fail("malformed field");
      if (*seconds < 0 || std::isnan(*seconds)) throw fail("negative or NaN travel time");
      rows.push_back(Row{*slot, *origin, *dest, *seconds, offset});
    }
    offset += line.size() + 1;
  }

  // Slot 0, origin 0 lists every destination once, which fixes n.
  std::size_t n = 0;
  while (n < rows.size() && rows[n].slot == 0 && rows[n].origin == 0) ++n;
  if (n == 0) {
    if (!rows.empty()) {
      offset = rows[0].offset;
      throw fail("first row must be slot 0, origin 0");
    }
    return ShortestTimeTable(0, 0);
  }
  const std::size_t per_slot = n * n;
  if (rows.size() % per_slot != 0) throw fail("truncated table: incomplete slot block");
  const std::size_t slot_count = rows.size() / per_slot;

  ShortestTimeTable table(n, slot_count);
  for (std::size_t k = 0; k < slot_count; ++k) {
    std::vector<Seconds> matrix(per_slot);
    bool populated = false;
    for (std::size_t i = 0; i < per_slot; ++i) {
      const Row &r = rows[k * per_slot + i];
      std::size_t origin = i / n, dest = i % n;
      if (r.slot != k || r.origin != origin || r.dest != dest) {
        offset = r.offset;
        throw fail("expected row " + std::to_string(k) + "," + std::to_string(origin) + "," +
                   std::to_string(dest));
      }
      if (origin == dest && r.seconds != 0) {
        offset = r.offset;
        throw fail("self-distance must be 0");
      }
      if (origin != dest && !std::isinf(r.seconds)) populated = true;
      matrix[i] = r.seconds;
    }
    if (populated) table.set_slot(static_cast<SlotIndex>(k), std::move(matrix));
  }
  return table;
}

}  // namespace ttdm
