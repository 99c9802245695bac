#include "ttdm/evaluation.hpp"

#include "ttdm/error.hpp"
#include "ttdm/parallel.hpp"
#include "ttdm/text.hpp"

#include <ostream>

namespace ttdm {

std::vector<EvalQuery> make_queries(const Dataset &test) {
  std::vector<EvalQuery> out;
  out.reserve(test.size());
  for (const auto &t : test.trajectories) {
    if (t.size() < 2) continue;
    EvalQuery q;
    q.prefix.user = t.user;
    q.prefix.points.assign(t.points.begin(), t.points.end() - 1);
    q.truth = t.back().location;
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QueryOutcome> rank_queries(std::span<const EvalQuery> queries, const Predictor &predictor) {
  std::vector<QueryOutcome> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t i) {
    auto ranking = predictor(queries[i].prefix);
    out[i].skipped = ranking.empty();
    out[i].rank = ranking.rank_of(queries[i].truth);
  });
  return out;
}

EvalResult score_outcomes(std::span<const QueryOutcome> outcomes, std::size_t r) {
  if (r < 1) throw ConfigError("r", "must be at least 1");
  EvalResult res;
  res.r = r;
  res.n_queries = outcomes.size();
  double hits = 0, precision = 0;
  for (const auto &o : outcomes) {
    if (o.skipped) ++res.n_skipped;
    if (o.rank && *o.rank <= r) {
      hits += 1.0;
      precision += 1.0 / static_cast<double>(*o.rank);
    }
  }
  if (res.n_queries > 0) {
    res.acc = hits / static_cast<double>(res.n_queries);
    res.ap = precision / static_cast<double>(res.n_queries);
  }
  return res;
}

EvalResult evaluate(std::span<const EvalQuery> queries, const Predictor &predictor, std::size_t r) {
  if (r < 1) throw ConfigError("r", "must be at least 1");
  auto outcomes = rank_queries(queries, predictor);
  return score_outcomes(outcomes, r);
}

Predictor make_predictor(const TrainedModels &models, Method method, double lambda) {
  return [&models, method, lambda](const Trajectory &prefix) { return rank_next(models, method, lambda, prefix); };
}

std::vector<double> lambda_grid(std::size_t steps) {
  if (steps == 0) throw ConfigError("steps", "must be positive");
  std::vector<double> out;
  for (std::size_t i = 0; i <= steps; ++i) out.push_back(static_cast<double>(i) / static_cast<double>(steps));
  return out;
}

namespace {

void append_rows(std::vector<ResultRow> &rows, const std::string &model, double lambda,
                 const std::vector<QueryOutcome> &outcomes, std::span<const std::size_t> rs) {
  for (std::size_t r : rs) rows.push_back(ResultRow{model, lambda, score_outcomes(outcomes, r)});
}

}  // namespace

std::vector<ResultRow> lambda_sweep(std::span<const EvalQuery> queries, const TrainedModels &models,
                                    std::span<const double> lambdas, std::span<const std::size_t> rs) {
  std::vector<ResultRow> rows;
  for (double lambda : lambdas) {
    JointConfig{lambda}.validate();
    auto outcomes = rank_queries(queries, make_predictor(models, Method::joint, lambda));
    append_rows(rows, method_name(Method::joint), lambda, outcomes, rs);
  }
  return rows;
}

std::vector<ResultRow> compare_methods(std::span<const EvalQuery> queries, const TrainedModels &models,
                                       double lambda, std::span<const std::size_t> rs) {
  JointConfig{lambda}.validate();
  std::vector<ResultRow> rows;
  append_rows(rows, method_name(Method::markov), 1.0,
              rank_queries(queries, make_predictor(models, Method::markov, 1.0)), rs);
  append_rows(rows, method_name(Method::ttdm), 0.0,
              rank_queries(queries, make_predictor(models, Method::ttdm, 0.0)), rs);
  append_rows(rows, method_name(Method::joint), lambda,
              rank_queries(queries, make_predictor(models, Method::joint, lambda)), rs);
  return rows;
}

std::vector<EvalResult> run_repeated(const std::function<std::vector<EvalResult>()> &evaluation,
                                     std::size_t runs) {
  if (runs < 1) throw ConfigError("runs", "must be at least 1");
  std::vector<EvalResult> mean = evaluation();
  for (std::size_t run = 1; run < runs; ++run) {
    auto next = evaluation();
    if (next.size() != mean.size()) throw Error("runs returned different result shapes");
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i].acc += next[i].acc;
      mean[i].ap += next[i].ap;
    }
  }
  for (auto &m : mean) {
    m.acc /= static_cast<double>(runs);
    m.ap /= static_cast<double>(runs);
  }
  return mean;
}

void write_results(std::ostream &out, std::span<const ResultRow> rows) {
  out << "model,lambda,r,acc,ap,n_queries,n_skipped\n";
  for (const auto &row : rows)
    out << row.model << ',' << text::format_double(row.lambda) << ',' << row.result.r << ','
        << text::format_double(row.result.acc) << ',' << text::format_double(row.result.ap) << ','
        << row.result.n_queries << ',' << row.result.n_skipped << '\n';
}

}  // namespace ttdm
