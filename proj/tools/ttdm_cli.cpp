// ttdm: next-location prediction pipeline.
//
//   ttdm synth      grid world -> records.csv
//   ttdm ingest     records.csv -> locations.csv, train.jsonl, test.jsonl
//   ttdm build      train.jsonl -> graphs.csv
//   ttdm precompute graphs.csv -> table.csv
//   ttdm train      train.jsonl -> model.csv
//   ttdm predict    one inline query, or the whole test set
//   ttdm evaluate   MM / TTDM / joint metrics -> results.csv
//   ttdm sweep      joint metrics over lambda = 0, 0.1, ..., 1 -> sweep.csv

#include "ttdm/error.hpp"
#include "ttdm/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

int main(int argc, char **argv) {
  CLI::App app{"Travel time difference model for next-location prediction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dir;
  std::vector<std::string> overrides;
  std::optional<std::string> seed, lambda, slot_seconds, r;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--dir", dir, "directory that relative artifact paths resolve against");
  app.add_option("--set", overrides, "override any configuration key (key=value), repeatable");
  app.add_option("--seed", seed, "seed for the split and the synthetic generator");
  app.add_option("--lambda", lambda, "joint-model weight of the Markov term, in [0,1]");
  app.add_option("--slot-seconds", slot_seconds, "time slot length; must divide 86400");
  app.add_option("--r", r, "comma-separated top-r cutoffs, e.g. 1,2,3,4,5");

  std::vector<std::pair<std::string, CLI::App *>> stages;
  for (const char *name : {"synth", "ingest", "build", "precompute", "train", "evaluate", "sweep"})
    stages.emplace_back(name, app.add_subcommand(name));
  stages[0].second->description("generate a synthetic grid world and write its records CSV");
  stages[1].second->description("sessionize, filter and split records into train/test trajectories");
  stages[2].second->description("build per-slot transfer graphs from the training trajectories");
  stages[3].second->description("precompute shortest travel times for every slot graph");
  stages[4].second->description("train the first-order Markov model");
  stages[5].second->description("evaluate MM, TTDM and the joint model on the test set");
  stages[6].second->description("evaluate the joint model over the lambda grid");

  auto *predict = app.add_subcommand("predict", "predict next locations");
  std::optional<std::string> query;
  std::string method = "joint";
  predict->add_option("--query", query, "inline trajectory, e.g. l1@09:05,l2@09:06,l7@09:08,l6@09:11");
  predict->add_option("--method", method, "joint | ttdm | mm")->check(CLI::IsMember({"joint", "ttdm", "mm"}));

  CLI11_PARSE(app, argc, argv);

  try {
    ttdm::PipelineConfig config;
    if (!config_path.empty()) config.load_file(config_path);
    for (const auto &kv : overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ttdm::ConfigError(kv, "--set expects key=value");
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!dir.empty()) config.dir = dir;
    if (seed) config.set("seed", *seed);
    if (lambda) config.set("lambda", *lambda);
    if (slot_seconds) config.set("slot_seconds", *slot_seconds);
    if (r) config.set("r", *r);
    config.validate();

    if (predict->parsed()) {
      auto m = method == "mm" ? ttdm::Method::markov : method == "ttdm" ? ttdm::Method::ttdm : ttdm::Method::joint;
      ttdm::cmd_predict(config, query, m, std::cout, std::cerr);
      return 0;
    }
    using Stage = void (*)(const ttdm::PipelineConfig &, std::ostream &);
    const Stage run[] = {ttdm::cmd_synth, ttdm::cmd_ingest, ttdm::cmd_build, ttdm::cmd_precompute,
                         ttdm::cmd_train, ttdm::cmd_evaluate, ttdm::cmd_sweep};
    for (std::size_t i = 0; i < stages.size(); ++i)
      if (stages[i].second->parsed()) run[i](config, std::cerr);
  } catch (const ttdm::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
