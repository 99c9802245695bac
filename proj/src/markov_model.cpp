#include "ttdm/markov_model.hpp"

#include "ttdm/error.hpp"
#include "ttdm/text.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace ttdm {

void MarkovModel::add(const Trajectory &trajectory) {
  const auto &pts = trajectory.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].location >= unigram_.size()) unigram_.resize(pts[i].location + 1, 0);
    ++unigram_[pts[i].location];
    if (i + 1 < pts.size()) ++bigram_[{pts[i].location, pts[i + 1].location}];
  }
}

std::uint64_t MarkovModel::count(LocationId from, LocationId to) const {
  auto it = bigram_.find({from, to});
  return it == bigram_.end() ? 0 : it->second;
}

double MarkovModel::prob(LocationId current, LocationId next) const {
  const double denom = static_cast<double>(count(current));
  if (config_.alpha > 0) {
    const double v = static_cast<double>(unigram_.size());
    return (static_cast<double>(count(current, next)) + config_.alpha) / (denom + config_.alpha * v);
  }
  if (denom == 0) return 0.0;
  return static_cast<double>(count(current, next)) / denom;
}

void MarkovModel::set_unigram(LocationId l, std::uint64_t count) {
  if (l >= unigram_.size()) unigram_.resize(l + 1, 0);
  unigram_[l] = count;
}

void MarkovModel::set_bigram(LocationId from, LocationId to, std::uint64_t count) {
  if (count == 0)
    bigram_.erase({from, to});
  else
    bigram_[{from, to}] = count;
}

MarkovModel train_markov(const Dataset &train, MarkovConfig config) {
  MarkovModel model(train.location_count, config);
  for (const auto &t : train.trajectories) model.add(t);
  return model;
}

PredictionRanking markov_predict_topk(const MarkovModel &model, const Trajectory &trajectory,
                                      std::span<const LocationId> candidates, std::size_t r) {
  if (r < 1) throw ConfigError("r", "must be at least 1");
  if (trajectory.empty() || candidates.empty()) return {};
  const LocationId current = trajectory.back().location;
  std::vector<RankedCandidate> entries;
  entries.reserve(candidates.size());
  for (LocationId c : candidates) entries.push_back({c, model.prob(current, c)});
  return make_ranking(std::move(entries), r);
}

void write_markov(std::ostream &out, const MarkovModel &model) {
  out << "from,to,count\n";
  for (const auto &[key, c] : model.bigram()) out << key.first << ',' << key.second << ',' << c << '\n';
  out << "location,count\n";
  for (std::size_t l = 0; l < model.unigram().size(); ++l)
    if (model.unigram()[l] > 0) out << l << ',' << model.unigram()[l] << '\n';
}

MarkovModel read_markov(std::istream &in, std::size_t location_count, MarkovConfig config) {
  MarkovModel model(location_count, config);
  std::string line;
  std::size_t line_no = 0;
  int section = 0;  // 1: bigrams, 2: unigrams
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = text::strip_cr(line);
    auto fail = [&](const std::string &why) {
      return ParseError("line " + std::to_string(line_no) + ": " + why, line_no);
    };
    if (row == "from,to,count") {
      if (section != 0) throw fail("unexpected bigram header");
      section = 1;
      continue;
    }
    if (row == "location,count") {
      if (section != 1) throw fail("unigram section must follow bigram section");
      section = 2;
      continue;
    }
    if (row.empty()) continue;
    if (section == 0) throw fail("expected header 'from,to,count'");
    auto f = text::split(row, ',');
    if (section == 1) {
      if (f.size() != 3) throw fail("expected 3 fields");
      auto from = text::parse_int<LocationId>(f[0]);
      auto to = text::parse_int<LocationId>(f[1]);
      auto c = text::parse_int<std::uint64_t>(f[2]);
      if (!from || !to || !c || *c == 0) throw fail("malformed bigram row");
      if (*from >= location_count || *to >= location_count) throw fail("location out of range");
      model.set_bigram(*from, *to, *c);
    } else {
      if (f.size() != 2) throw fail("expected 2 fields");
      auto l = text::parse_int<LocationId>(f[0]);
      auto c = text::parse_int<std::uint64_t>(f[1]);
      if (!l || !c) throw fail("malformed unigram row");
      if (*l >= location_count) throw fail("location out of range");
      model.set_unigram(*l, *c);
    }
  }
  if (section != 2) throw ParseError("model file truncated: missing unigram section", line_no);
  return model;
}

}  // namespace ttdm
