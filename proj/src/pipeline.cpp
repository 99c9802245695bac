#include "ttdm/pipeline.hpp"

#include "ttdm/error.hpp"
#include "ttdm/markov_model.hpp"
#include "ttdm/shortest_times.hpp"
#include "ttdm/synthetic.hpp"
#include "ttdm/text.hpp"
#include "ttdm/transfer_graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ttdm {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
  if constexpr (std::is_floating_point_v<T>) {
    auto v = text::parse_double(value);
    if (!v) throw ConfigError(key, "expected a number, got '" + value + "'");
    return *v;
  } else {
    auto v = text::parse_int<T>(value);
    if (!v) throw ConfigError(key, "expected an integer, got '" + value + "'");
    return *v;
  }
}

std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path &path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path.string());
  return out;
}

LocationIndex load_locations(const PipelineConfig &config) {
  auto in = open_input(config.resolve(config.locations_path));
  return read_locations(in);
}

Dataset load_dataset(const PipelineConfig &config, const std::string &path, const LocationIndex &locations) {
  auto in = open_input(config.resolve(path));
  return Dataset{read_trajectories(in, locations), locations.size()};
}

InverseFunction inverse_function(const PipelineConfig &config) {
  InverseFunction f{InverseFunction::parse_kind(config.f), config.epsilon};
  f.validate();
  return f;
}

nlohmann::ordered_json ranking_json(const PredictionRanking &ranking, const LocationIndex &locations) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto &e : ranking.entries) out.push_back({locations.name(e.location), e.score});
  return out;
}

Timestamp parse_query_time(const std::string &s) {
  if (auto v = text::parse_int<Timestamp>(s)) return *v;
  auto parts = text::split(s, ':');
  if (parts.size() == 2 || parts.size() == 3) {
    Timestamp total = 0;
    Timestamp scale[] = {3600, 60, 1};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto v = text::parse_int<Timestamp>(parts[i]);
      if (!v || *v < 0) throw ConfigError("query", "bad time '" + s + "'");
      total += *v * scale[i];
    }
    return total;
  }
  throw ConfigError("query", "bad time '" + s + "'");
}

}  // namespace

void PipelineConfig::set(const std::string &key, const std::string &value) {
  static const std::map<std::string, std::function<void(PipelineConfig &, const std::string &)>> setters = {
      {"dir", [](auto &c, auto &v) { c.dir = v; }},
      {"records", [](auto &c, auto &v) { c.records_path = v; }},
      {"locations", [](auto &c, auto &v) { c.locations_path = v; }},
      {"train", [](auto &c, auto &v) { c.train_path = v; }},
      {"test", [](auto &c, auto &v) { c.test_path = v; }},
      {"graphs", [](auto &c, auto &v) { c.graphs_path = v; }},
      {"table", [](auto &c, auto &v) { c.table_path = v; }},
      {"model", [](auto &c, auto &v) { c.model_path = v; }},
      {"results", [](auto &c, auto &v) { c.results_path = v; }},
      {"sweep", [](auto &c, auto &v) { c.sweep_path = v; }},
      {"predictions", [](auto &c, auto &v) { c.predictions_path = v; }},
      {"slot_seconds", [](auto &c, auto &v) { c.slot_seconds = parse_number<Timestamp>("slot_seconds", v); }},
      {"gap", [](auto &c, auto &v) { c.gap = parse_number<Timestamp>("gap", v); }},
      {"min_len", [](auto &c, auto &v) { c.min_len = parse_number<std::size_t>("min_len", v); }},
      {"train_fraction", [](auto &c, auto &v) { c.train_fraction = parse_number<double>("train_fraction", v); }},
      {"seed", [](auto &c, auto &v) { c.seed = parse_number<std::uint64_t>("seed", v); }},
      {"lambda", [](auto &c, auto &v) { c.lambda = parse_number<double>("lambda", v); }},
      {"f", [](auto &c, auto &v) { c.f = v; }},
      {"epsilon", [](auto &c, auto &v) { c.epsilon = parse_number<double>("epsilon", v); }},
      {"alpha", [](auto &c, auto &v) { c.alpha = parse_number<double>("alpha", v); }},
      {"r", [](auto &c, auto &v) { c.r = parse_r_list(v); }},
      {"runs", [](auto &c, auto &v) { c.runs = parse_number<std::size_t>("runs", v); }},
      {"grid_rows", [](auto &c, auto &v) { c.grid_rows = parse_number<std::size_t>("grid_rows", v); }},
      {"grid_cols", [](auto &c, auto &v) { c.grid_cols = parse_number<std::size_t>("grid_cols", v); }},
      {"edge_seconds", [](auto &c, auto &v) { c.edge_seconds = parse_number<double>("edge_seconds", v); }},
      {"noise", [](auto &c, auto &v) { c.noise = parse_number<double>("noise", v); }},
      {"agents", [](auto &c, auto &v) { c.agents = parse_number<std::size_t>("agents", v); }},
      {"trips_per_agent", [](auto &c, auto &v) { c.trips_per_agent = parse_number<std::size_t>("trips_per_agent", v); }},
      {"fidelity", [](auto &c, auto &v) { c.fidelity = parse_number<double>("fidelity", v); }},
      {"destination_skew", [](auto &c, auto &v) { c.destination_skew = parse_number<double>("destination_skew", v); }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError(key, "unknown configuration key");
  it->second(*this, value);
}

void PipelineConfig::load(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = line;
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::string content = trim(row);
    if (content.empty()) continue;
    auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) + ": expected key=value", line_no);
    set(trim(std::string_view(content).substr(0, eq)), trim(std::string_view(content).substr(eq + 1)));
  }
}

void PipelineConfig::load_file(const std::filesystem::path &path) {
  auto in = open_input(path);
  load(in);
}

void PipelineConfig::validate() const {
  SlotConfig{slot_seconds}.validate();
  if (gap <= 0) throw ConfigError("gap", "must be positive");
  if (min_len < 1) throw ConfigError("min_len", "must be at least 1");
  SplitConfig{train_fraction, seed}.validate();
  JointConfig{lambda}.validate();
  InverseFunction::parse_kind(f);
  InverseFunction{InverseFunction::Kind::reciprocal, epsilon}.validate();
  if (!(alpha >= 0)) throw ConfigError("alpha", "must be non-negative");
  if (r.empty()) throw ConfigError("r", "must list at least one cutoff");
  for (auto v : r)
    if (v < 1) throw ConfigError("r", "cutoffs must be at least 1");
  if (runs < 1) throw ConfigError("runs", "must be at least 1");
  GridSpec{grid_rows, grid_cols, edge_seconds, noise, seed}.validate();
  AgentSpec{agents, trips_per_agent, fidelity, destination_skew}.validate();
}

std::filesystem::path PipelineConfig::resolve(const std::string &path) const {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : dir / p;
}

std::size_t PipelineConfig::max_r() const { return *std::max_element(r.begin(), r.end()); }

std::vector<std::size_t> parse_r_list(const std::string &value) {
  std::vector<std::size_t> out;
  for (auto part : text::split(value, ',')) {
    auto v = text::parse_int<std::size_t>(trim(part));
    if (!v || *v < 1) throw ConfigError("r", "expected comma-separated positive integers, got '" + value + "'");
    out.push_back(*v);
  }
  return out;
}

void cmd_synth(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  GridSpec grid{config.grid_rows, config.grid_cols, config.edge_seconds, config.noise, config.seed};
  AgentSpec agents{config.agents, config.trips_per_agent, config.fidelity, config.destination_skew};
  auto world = generate(grid, agents);
  auto out = open_output(config.resolve(config.records_path));
  write_records(out, world.records, world.locations);
  log << "synth: " << world.records.size() << " records, " << world.dataset.size() << " trips on a "
      << grid.rows << "x" << grid.cols << " grid\n";
}

void cmd_ingest(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  LocationIndex locations;
  std::vector<Record> records;
  {
    auto in = open_input(config.resolve(config.records_path));
    records = parse_records(in, locations);
  }
  auto sessions = sessionize(records, config.gap);
  const std::size_t n_sessions = sessions.size();
  Dataset all{filter_min_length(std::move(sessions), config.min_len), locations.size()};
  if (all.empty()) throw Error("no trajectories of length >= " + std::to_string(config.min_len));
  auto [train, test] = split(all, SplitConfig{config.train_fraction, config.seed});

  auto loc_out = open_output(config.resolve(config.locations_path));
  write_locations(loc_out, locations);
  auto train_out = open_output(config.resolve(config.train_path));
  write_trajectories(train_out, train.trajectories, locations);
  auto test_out = open_output(config.resolve(config.test_path));
  write_trajectories(test_out, test.trajectories, locations);
  log << "ingest: " << records.size() << " records, " << locations.size() << " locations, " << n_sessions
      << " sessions, " << all.size() << " trajectories (train " << train.size() << ", test " << test.size()
      << ")\n";
}

void cmd_build(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  auto locations = load_locations(config);
  auto train = load_dataset(config, config.train_path, locations);
  auto graphs = build_graphs(train, SlotConfig{config.slot_seconds});
  auto out = open_output(config.resolve(config.graphs_path));
  write_graphs(out, graphs);
  std::size_t edges = 0;
  for (const auto &g : graphs.slots) edges += g.edge_count();
  auto cdf = candidate_count_cdf(graphs);
  log << "build: " << graphs.slots.size() << " slot graphs, " << edges << " slot edges, "
      << graphs.aggregate.edge_count() << " distinct segments, " << graphs.dropped_negative
      << " negative durations dropped; mean candidates " << cdf.mean << ", >2 candidates "
      << cdf.fraction_above(2) << "\n";
}

void cmd_precompute(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  auto locations = load_locations(config);
  auto in = open_input(config.resolve(config.graphs_path));
  auto graphs = read_graphs(in, SlotConfig{config.slot_seconds}, locations.size());
  auto table = precompute(graphs);
  auto out = open_output(config.resolve(config.table_path));
  write_table(out, table);
  log << "precompute: " << table.slot_count() << " slots x " << table.location_count() << "^2 entries\n";
}

void cmd_train(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  auto locations = load_locations(config);
  auto train = load_dataset(config, config.train_path, locations);
  auto model = train_markov(train, MarkovConfig{config.alpha});
  auto out = open_output(config.resolve(config.model_path));
  write_markov(out, model);
  log << "train: " << model.bigram().size() << " transitions from " << train.size() << " trajectories\n";
}

TrainedModels load_models(const PipelineConfig &config, const LocationIndex &locations) {
  TrainedModels models;
  {
    auto in = open_input(config.resolve(config.graphs_path));
    models.graphs = read_graphs(in, SlotConfig{config.slot_seconds}, locations.size());
  }
  {
    auto in = open_input(config.resolve(config.table_path));
    models.table = read_table(in);
  }
  if (models.table.location_count() != 0 && models.table.location_count() != locations.size())
    throw Error("table location count does not match " + config.resolve(config.locations_path).string());
  if (models.table.slot_count() != 0 && models.table.slot_count() != models.graphs.slots.size())
    throw Error("table slot count does not match slot_seconds");
  {
    auto in = open_input(config.resolve(config.model_path));
    models.markov = read_markov(in, locations.size(), MarkovConfig{config.alpha});
  }
  models.f = inverse_function(config);
  return models;
}

Trajectory parse_query(const std::string &query, const LocationIndex &locations) {
  Trajectory t{"query", {}};
  for (auto item : text::split(query, ',')) {
    std::string s = trim(item);
    auto at = s.rfind('@');
    if (at == std::string::npos) throw ConfigError("query", "expected <location>@<time>, got '" + s + "'");
    auto id = locations.find(s.substr(0, at));
    if (!id) throw ConfigError("query", "unknown location '" + s.substr(0, at) + "'");
    t.points.push_back({*id, parse_query_time(s.substr(at + 1))});
  }
  if (t.empty()) throw ConfigError("query", "empty query");
  return t;
}

void cmd_predict(const PipelineConfig &config, const std::optional<std::string> &query, Method method,
                 std::ostream &out, std::ostream &log) {
  config.validate();
  auto locations = load_locations(config);
  auto models = load_models(config, locations);
  const std::size_t r = config.max_r();
  if (query) {
    auto t = parse_query(*query, locations);
    auto ranking = rank_next(models, method, config.lambda, t, r);
    nlohmann::ordered_json line = {{"truth", nullptr}, {"ranking", ranking_json(ranking, locations)}};
    out << line.dump() << '\n';
    return;
  }
  auto test = load_dataset(config, config.test_path, locations);
  auto queries = make_queries(test);
  auto file = open_output(config.resolve(config.predictions_path));
  for (const auto &q : queries) {
    auto ranking = rank_next(models, method, config.lambda, q.prefix, r);
    nlohmann::ordered_json line = {{"truth", locations.name(q.truth)}, {"ranking", ranking_json(ranking, locations)}};
    file << line.dump() << '\n';
  }
  log << "predict: " << queries.size() << " " << method_name(method) << " predictions\n";
}

void cmd_evaluate(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  auto locations = load_locations(config);
  auto models = load_models(config, locations);
  auto queries = make_queries(load_dataset(config, config.test_path, locations));
  std::vector<ResultRow> rows;
  auto once = [&] {
    rows = compare_methods(queries, models, config.lambda, config.r);
    std::vector<EvalResult> results;
    for (const auto &row : rows) results.push_back(row.result);
    return results;
  };
  auto mean = run_repeated(once, config.runs);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].result = mean[i];
  auto out = open_output(config.resolve(config.results_path));
  write_results(out, rows);
  log << "evaluate: " << queries.size() << " queries\n";
  for (const auto &row : rows)
    log << "  " << row.model << " top-" << row.result.r << " acc " << row.result.acc << " ap " << row.result.ap
        << "\n";
}

void cmd_sweep(const PipelineConfig &config, std::ostream &log) {
  config.validate();
  auto locations = load_locations(config);
  auto models = load_models(config, locations);
  auto queries = make_queries(load_dataset(config, config.test_path, locations));
  auto lambdas = lambda_grid(10);
  auto rows = lambda_sweep(queries, models, lambdas, config.r);
  auto out = open_output(config.resolve(config.sweep_path));
  write_results(out, rows);
  log << "sweep: " << lambdas.size() << " lambda values x " << config.r.size() << " cutoffs over "
      << queries.size() << " queries\n";
}

void run_pipeline(const PipelineConfig &config, std::ostream &log) {
  cmd_synth(config, log);
  cmd_ingest(config, log);
  cmd_build(config, log);
  cmd_precompute(config, log);
  cmd_train(config, log);
  cmd_evaluate(config, log);
  cmd_sweep(config, log);
}

}  // namespace ttdm
