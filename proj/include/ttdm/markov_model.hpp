/**
 * First-order Markov next-location model with maximum-likelihood
 * transition estimates.
 */

#ifndef TTDM_MARKOV_MODEL_HPP_
#define TTDM_MARKOV_MODEL_HPP_

#include "ttdm/ranking.hpp"
#include "ttdm/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace ttdm {

struct MarkovConfig {
  /** Additive smoothing; 0 gives the pure MLE estimate. */
  double alpha = 0.0;

  bool operator==(const MarkovConfig &) const = default;
};

class MarkovModel {
 public:
  MarkovModel() = default;
  explicit MarkovModel(std::size_t location_count, MarkovConfig config = {})
      : config_(config), unigram_(location_count, 0) {}

  /** Counts every occurrence and every consecutive pair of the trajectory. */
  void add(const Trajectory &trajectory);

  std::uint64_t count(LocationId l) const { return l < unigram_.size() ? unigram_[l] : 0; }
  std::uint64_t count(LocationId from, LocationId to) const;

  /**
   * #(current,next) / #(current). Zero for unseen pairs and for locations
   * never observed. With alpha > 0: (#pair + alpha) / (#current + alpha * V).
   */
  double prob(LocationId current, LocationId next) const;

  std::size_t location_count() const { return unigram_.size(); }
  const MarkovConfig &config() const { return config_; }
  const std::vector<std::uint64_t> &unigram() const { return unigram_; }
  const std::map<std::pair<LocationId, LocationId>, std::uint64_t> &bigram() const { return bigram_; }

  void set_unigram(LocationId l, std::uint64_t count);
  void set_bigram(LocationId from, LocationId to, std::uint64_t count);

  bool operator==(const MarkovModel &) const = default;

 private:
  MarkovConfig config_;
  std::vector<std::uint64_t> unigram_;
  std::map<std::pair<LocationId, LocationId>, std::uint64_t> bigram_;
};

MarkovModel train_markov(const Dataset &train, MarkovConfig config = {});

/**
 * Ranks `candidates` by p(candidate | last location of `trajectory`),
 * ties by ascending location, truncated to r.
 */
PredictionRanking markov_predict_topk(const MarkovModel &model, const Trajectory &trajectory,
                                      std::span<const LocationId> candidates, std::size_t r);

// Model CSV: `from,to,count` section, then a `location,count` section.
void write_markov(std::ostream &out, const MarkovModel &model);
MarkovModel read_markov(std::istream &in, std::size_t location_count, MarkovConfig config = {});

}  // namespace ttdm

#endif  // TTDM_MARKOV_MODEL_HPP_
