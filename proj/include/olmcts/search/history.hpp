#pragma once

#include <unordered_map>
#include <vector>

#include "olmcts/engine/types.hpp"
#include "olmcts/rng.hpp"

namespace olm::search {

struct StatPair {
  double sum = 0.0;
  double count = 0.0;
  double mean() const { return count > 0 ? sum / count : 0.0; }
};

// One trajectory step: the avatar cell observed before the action was taken.
struct TrajStep {
  int cell;
  engine::Action action;
};

// Progressive History statistics keyed by (avatar cell, action).
class HistoryTable {
 public:
  const StatPair* find(int cell, engine::Action a) const;
  void add(int cell, engine::Action a, double value);
  void decay(double gamma);
  void clear() { table_.clear(); }
  size_t size() const { return table_.size(); }

 private:
  std::unordered_map<uint64_t, StatPair> table_;
};

// N-gram statistics keyed by (avatar cell of the first action, sequence).
class NGramTable {
 public:
  static uint64_t key(int cell, const engine::Action* seq, int n);
  const StatPair* find(uint64_t key) const;
  void add(uint64_t key, double value);
  void decay(double gamma);
  void clear() { table_.clear(); }
  size_t size() const { return table_.size(); }

 private:
  std::unordered_map<uint64_t, StatPair> table_;
};

// Epsilon-greedy play-out policy over the NST score: for each legal action,
// average the means of the n-grams (suffix of `recent` plus the candidate)
// whose observation count reaches `visit_threshold`; unqualified actions
// score 0; ties are broken uniformly at random.
engine::Action nst_playout_action(const std::vector<engine::Action>& legal,
                                  const std::vector<TrajStep>& recent,
                                  int current_cell, const NGramTable& table,
                                  double epsilon, int visit_threshold,
                                  int max_n, Rng& rng);

// Records one simulation outcome into the PH and/or NST tables (either may
// be null). `value` is the normalized final value of the simulation.
void update_history_tables(HistoryTable* history, NGramTable* ngrams,
                           const std::vector<TrajStep>& trajectory,
                           double value, int max_n);

}  // namespace olm::search
