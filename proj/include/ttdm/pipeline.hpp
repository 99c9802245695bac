/**
 * File-based pipeline stages behind the `ttdm` CLI. Each stage reads its
 * declared inputs from disk and writes its declared outputs, so any
 * intermediate can be deleted and regenerated.
 */

#ifndef TTDM_PIPELINE_HPP_
#define TTDM_PIPELINE_HPP_

#include "ttdm/evaluation.hpp"
#include "ttdm/joint_model.hpp"
#include "ttdm/trajectory_data.hpp"
#include "ttdm/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ttdm {

struct PipelineConfig {
  // Artifact paths; relative paths resolve against `dir`.
  std::filesystem::path dir = ".";
  std::string records_path = "records.csv";
  std::string locations_path = "locations.csv";
  std::string train_path = "train.jsonl";
  std::string test_path = "test.jsonl";
  std::string graphs_path = "graphs.csv";
  std::string table_path = "table.csv";
  std::string model_path = "model.csv";
  std::string results_path = "results.csv";
  std::string sweep_path = "sweep.csv";
  std::string predictions_path = "predictions.jsonl";

  Timestamp slot_seconds = 86400;
  Timestamp gap = kDefaultSessionGap;
  std::size_t min_len = kDefaultMinLength;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  double lambda = kDefaultLambda;
  std::string f = "reciprocal";
  double epsilon = 1.0;
  double alpha = 0.0;
  std::vector<std::size_t> r = {1, 2, 3, 4, 5};
  std::size_t runs = 1;

  // synth
  std::size_t grid_rows = 10;
  std::size_t grid_cols = 10;
  double edge_seconds = 60;
  double noise = 0.1;
  std::size_t agents = 500;
  std::size_t trips_per_agent = 4;
  double fidelity = 0.85;
  double destination_skew = 1.0;

  /** Sets a field by its key=value name. Throws ConfigError naming the field. */
  void set(const std::string &key, const std::string &value);
  /** Applies `key = value` lines; `#` starts a comment. */
  void load(std::istream &in);
  void load_file(const std::filesystem::path &path);
  /** Throws ConfigError naming the first field that violates its constraint. */
  void validate() const;

  std::filesystem::path resolve(const std::string &path) const;
  std::size_t max_r() const;
};

/** Parses a comma-separated list of cutoffs, e.g. "1,2,3". */
std::vector<std::size_t> parse_r_list(const std::string &value);

// Stages. Each logs a one-line summary of what it produced to `log`.
void cmd_synth(const PipelineConfig &config, std::ostream &log);
void cmd_ingest(const PipelineConfig &config, std::ostream &log);
void cmd_build(const PipelineConfig &config, std::ostream &log);
void cmd_precompute(const PipelineConfig &config, std::ostream &log);
void cmd_train(const PipelineConfig &config, std::ostream &log);
void cmd_evaluate(const PipelineConfig &config, std::ostream &log);
void cmd_sweep(const PipelineConfig &config, std::ostream &log);

/**
 * Predicts the next location. With a query (`name@time,...`, times as
 * epoch seconds or HH:MM[:SS]) one JSON line is written to `out`;
 * without one, every test query is predicted into the predictions file.
 */
void cmd_predict(const PipelineConfig &config, const std::optional<std::string> &query, Method method,
                 std::ostream &out, std::ostream &log);

/** Loads graphs, table and Markov model written by earlier stages. */
TrainedModels load_models(const PipelineConfig &config, const LocationIndex &locations);

/** Parses an inline query against a location index. */
Trajectory parse_query(const std::string &query, const LocationIndex &locations);

/** synth, ingest, build, precompute, train, evaluate, sweep. */
void run_pipeline(const PipelineConfig &config, std::ostream &log);

}  // namespace ttdm

#endif  // TTDM_PIPELINE_HPP_
