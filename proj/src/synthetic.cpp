#include "ttdm/synthetic.hpp"

#include "ttdm/error.hpp"
#include "ttdm/parallel.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

namespace ttdm {

namespace {

constexpr Timestamp kEpochBase = 1441065600;  // 2015-09-01T00:00:00Z
constexpr Timestamp kMinTripGap = 2 * 3600;
constexpr Timestamp kMaxTripGap = 6 * 3600;

std::vector<LocationId> neighbours(const GridSpec &grid, LocationId cell) {
  std::size_t r = cell / grid.cols, c = cell % grid.cols;
  std::vector<LocationId> out;
  if (r > 0) out.push_back(grid.cell(r - 1, c));
  if (c > 0) out.push_back(grid.cell(r, c - 1));
  if (c + 1 < grid.cols) out.push_back(grid.cell(r, c + 1));
  if (r + 1 < grid.rows) out.push_back(grid.cell(r + 1, c));
  return out;
}

std::size_t manhattan(const GridSpec &grid, LocationId a, LocationId b) {
  auto d = [](std::size_t x, std::size_t y) { return x > y ? x - y : y - x; };
  return d(a / grid.cols, b / grid.cols) + d(a % grid.cols, b % grid.cols);
}

template <typename Rng>
LocationId pick(const std::vector<LocationId> &options, Rng &rng) {
  std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
  return options[dist(rng)];
}

std::string agent_name(std::size_t agent) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "u%06zu", agent);
  return buf;
}

}  // namespace

void GridSpec::validate() const {
  if (rows < 2 || cols < 2) throw ConfigError("grid", "rows and cols must be at least 2");
  if (!(edge_seconds > 0) || std::isinf(edge_seconds)) throw ConfigError("edge_seconds", "must be positive");
  if (!(noise >= 0 && noise < 1)) throw ConfigError("noise", "must lie in [0, 1)");
}

void AgentSpec::validate() const {
  if (!(shortest_path_fidelity >= 0 && shortest_path_fidelity <= 1))
    throw ConfigError("fidelity", "must lie in [0, 1]");
  if (!(destination_skew >= 0) || std::isinf(destination_skew))
    throw ConfigError("destination_skew", "must be finite and non-negative");
}

TransferGraph grid_graph(const GridSpec &grid) {
  grid.validate();
  TransferGraph g(grid.cells());
  for (LocationId cell = 0; cell < grid.cells(); ++cell)
    for (LocationId n : neighbours(grid, cell)) g.set_edge(cell, n, grid.edge_seconds);
  return g;
}

SyntheticWorld generate(const GridSpec &grid, const AgentSpec &agents) {
  grid.validate();
  agents.validate();

  SyntheticWorld world;
  for (std::size_t i = 0; i < grid.cells(); ++i) world.locations.intern("l" + std::to_string(i + 1));
  world.truth = grid_graph(grid);
  world.dataset.location_count = grid.cells();

  // Beyond this many steps a trip stops detouring and heads straight for its destination.
  const std::size_t detour_budget = 4 * (grid.rows + grid.cols);

  std::vector<double> popularity(grid.cells());
  {
    std::vector<std::size_t> order(grid.cells());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(grid.seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < order.size(); ++k)
      popularity[order[k]] = std::pow(static_cast<double>(k + 1), -agents.destination_skew);
  }

  std::vector<std::vector<Trajectory>> per_agent(agents.n_agents);
  parallel_for(agents.n_agents, [&](std::size_t agent) {
    std::seed_seq seq{grid.seed, static_cast<std::uint64_t>(agent)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<LocationId> any_cell(0, static_cast<LocationId>(grid.cells() - 1));
    std::discrete_distribution<LocationId> popular_cell(popularity.begin(), popularity.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> jitter(1.0 - grid.noise, 1.0 + grid.noise);
    std::uniform_int_distribution<Timestamp> start_of_day(0, kSecondsPerDay - 1);
    std::uniform_int_distribution<Timestamp> gap(kMinTripGap, kMaxTripGap);

    const std::string user = agent_name(agent);
    Timestamp clock = kEpochBase + start_of_day(rng);
    for (std::size_t trip = 0; trip < agents.trips_per_agent; ++trip) {
      LocationId here = any_cell(rng);
      auto draw_dest = [&] { return agents.destination_skew > 0 ? popular_cell(rng) : any_cell(rng); };
      LocationId dest = draw_dest();
      while (dest == here) dest = draw_dest();

      Trajectory t{user, {{here, clock}}};
      std::size_t steps = 0;
      while (here != dest) {
        auto options = neighbours(grid, here);
        bool follow = steps >= detour_budget || unit(rng) < agents.shortest_path_fidelity;
        if (follow) {
          std::erase_if(options, [&](LocationId n) { return manhattan(grid, n, dest) >= manhattan(grid, here, dest); });
        }
        LocationId next = pick(options, rng);
        double scale = grid.noise > 0 ? jitter(rng) : 1.0;
        Timestamp dt = std::max<Timestamp>(1, std::llround(grid.edge_seconds * scale));
        clock += dt;
        here = next;
        t.points.push_back({here, clock});
        ++steps;
      }
      per_agent[agent].push_back(std::move(t));
      clock += gap(rng);
    }
  });

  for (auto &trips : per_agent) {
    for (auto &t : trips) {
      for (const auto &p : t.points) world.records.push_back(Record{t.user, p.location, p.time});
      world.dataset.trajectories.push_back(std::move(t));
    }
  }
  return world;
}

}  // namespace ttdm
