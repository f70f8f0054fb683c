#include "olmcts/search/history.hpp"

#include <algorithm>

namespace olm::search {

namespace {

// (cell, action) packed into a collision-free key: cell < 2^24, 3 bits per
// action, length tag in the top byte.
uint64_t ph_key(int cell, engine::Action a) {
  return (uint64_t{1} << 56) | (static_cast<uint64_t>(cell) << 8) |
         static_cast<uint64_t>(a);
}

}  // namespace

const StatPair* HistoryTable::find(int cell, engine::Action a) const {
  auto it = table_.find(ph_key(cell, a));
  return it == table_.end() ? nullptr : &it->second;
}

void HistoryTable::add(int cell, engine::Action a, double value) {
  StatPair& s = table_[ph_key(cell, a)];
  s.sum += value;
  s.count += 1.0;
}

void HistoryTable::decay(double gamma) {
  for (auto& [k, s] : table_) {
    s.sum *= gamma;
    s.count *= gamma;
  }
}

uint64_t NGramTable::key(int cell, const engine::Action* seq, int n) {
  uint64_t k = (static_cast<uint64_t>(n) << 56) |
               (static_cast<uint64_t>(cell) << 24);
  for (int i = 0; i < n; i++)
    k |= static_cast<uint64_t>(seq[i]) << (3 * i);
  return k;
}

const StatPair* NGramTable::find(uint64_t key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

void NGramTable::add(uint64_t key, double value) {
  StatPair& s = table_[key];
  s.sum += value;
  s.count += 1.0;
}

void NGramTable::decay(double gamma) {
  for (auto& [k, s] : table_) {
    s.sum *= gamma;
    s.count *= gamma;
  }
}

engine::Action nst_playout_action(const std::vector<engine::Action>& legal,
                                  const std::vector<TrajStep>& recent,
                                  int current_cell, const NGramTable& table,
                                  double epsilon, int visit_threshold,
                                  int max_n, Rng& rng) {
  if (rng.real() < epsilon)
    return legal[rng.uniform(static_cast<uint32_t>(legal.size()))];

  const int hist = static_cast<int>(recent.size());
  std::vector<double> scores(legal.size(), 0.0);
  for (size_t ci = 0; ci < legal.size(); ci++) {
    double total = 0.0;
    int used = 0;
    engine::Action seq[8];
    for (int n = 1; n <= max_n; n++) {
      if (n - 1 > hist) break;
      // Suffix of length n-1 from the recent actions, then the candidate.
      int first = hist - (n - 1);
      for (int i = 0; i < n - 1; i++) seq[i] = recent[first + i].action;
      seq[n - 1] = legal[ci];
      int cell = n == 1 ? current_cell : recent[first].cell;
      const StatPair* s = table.find(NGramTable::key(cell, seq, n));
      if (s && s->count >= visit_threshold) {
        total += s->mean();
        used++;
      }
    }
    scores[ci] = used > 0 ? total / used : 0.0;
  }

  double best = *std::max_element(scores.begin(), scores.end());
  std::vector<size_t> ties;
  for (size_t i = 0; i < scores.size(); i++)
    if (scores[i] == best) ties.push_back(i);
  return legal[ties[rng.uniform(static_cast<uint32_t>(ties.size()))]];
}

void update_history_tables(HistoryTable* history, NGramTable* ngrams,
                           const std::vector<TrajStep>& trajectory,
                           double value, int max_n) {
  if (history) {
    for (const TrajStep& step : trajectory)
      history->add(step.cell, step.action, value);
  }
  if (ngrams) {
    const int len = static_cast<int>(trajectory.size());
    engine::Action seq[8];
    for (int start = 0; start < len; start++) {
      for (int n = 1; n <= max_n && start + n <= len; n++) {
        seq[n - 1] = trajectory[start + n - 1].action;
        ngrams->add(NGramTable::key(trajectory[start].cell, seq, n), value);
      }
    }
  }
}

}  // namespace olm::search
