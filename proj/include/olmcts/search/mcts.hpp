#pragma once

#include <vector>

#include "olmcts/engine/state.hpp"
#include "olmcts/search/config.hpp"
#include "olmcts/search/history.hpp"
#include "olmcts/search/knowledge.hpp"
#include "olmcts/search/node.hpp"
#include "olmcts/search/value.hpp"
#include "olmcts/rng.hpp"

namespace olm::search {

struct SearchResult {
  engine::Action action = engine::Action::Nil;
  int simulations = 0;
  bool fallback = false;  // no visited child; first legal action returned

  struct ChildStat {
    engine::Action action;
    double visits;
    double average;
    bool pruned;
    NoveltyMark mark;
  };
  std::vector<ChildStat> child_stats;

  double last_sim_seconds = 0.0;
  double max_sim_seconds = 0.0;
};

// Cross-tick search state wired in by the agent. Table/kb pointers may be
// null when the matching toggle is off.
struct SearchContext {
  SearchConfig cfg;
  HistoryTable* history = nullptr;
  NGramTable* ngrams = nullptr;
  KnowledgeBase* kb = nullptr;
};

struct BudgetOverride {
  bool use = false;
  double ms = 0.0;
  int sims = 0;
};

// One complete budgeted search: optional BFTI, then repeated
// selection / play-out / whole-play-out expansion / backpropagation, then
// max-average recommendation (subject to novelty filtering).
SearchResult run_search(const engine::GameState& root_state, Node& root,
                        SearchContext& ctx, Rng& rng,
                        const BudgetOverride& budget = {});

// Final move choice: the non-pruned visited child with the maximum average,
// with not-novel children considered only when the best novel alternative
// has a normalized average below 0.5. Ties break in declaration order.
// Returns nullptr when no child qualifies.
Node* recommend_child(Node& root, const ValueBounds& bounds, bool novelty_on);

}  // namespace olm::search
