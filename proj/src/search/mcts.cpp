#include "olmcts/search/mcts.hpp"

#include <algorithm>
#include <chrono>

#include "olmcts/search/lifecycle.hpp"
#include "olmcts/search/loss_avoidance.hpp"
#include "olmcts/search/novelty.hpp"

namespace olm::search {

namespace {

using Clock = std::chrono::steady_clock;

int avatar_cell(const engine::GameState& s) {
  if (!s.avatar_alive()) return -1;
  const auto& av = s.avatar();
  return av.y * s.width + av.x;
}

struct SimEnv {
  const engine::GameState& root_state;
  Node& root;
  SearchContext& ctx;
  ValueBounds& bounds;
  Evaluator evaluate;
  double root_eval;  // raw terminal-aware evaluation of the root state
  Rng& rng;
};

void capture_test_record(Node& node, const engine::GameState& s) {
  if (node.has_test_record) return;
  node.test_atoms = engine::feature_atoms(s);
  node.test_score = s.score;
  node.has_test_record = true;
}

// Selection value: (mixmax) normalized average + UCB1 exploration + PH bias.
double selection_value(const SimEnv& env, const Node& parent,
                       const Node& child, int cell) {
  const SearchConfig& cfg = env.ctx.cfg;
  double q = env.bounds.norm(child.avg());
  if (cfg.mixmax) q = mixmax_value(q, env.bounds.norm(child.max_score));
  double value = ucb1(q, parent.visits, child.visits, cfg.exploration_c);
  if (cfg.ph && env.ctx.history && cell >= 0) {
    if (const StatPair* h = env.ctx.history->find(cell, child.action))
      value += ph_bias(h->mean(), cfg.ph_weight, q, child.visits);
  }
  return value;
}

// One simulation: selection through fully expanded nodes, play-out with the
// whole play-out added to the tree, evaluation, optional loss avoidance,
// backpropagation, history updates.
void simulate(SimEnv& env) {
  const SearchConfig& cfg = env.ctx.cfg;
  engine::GameState state = env.root_state;  // fresh copy (open loop)
  Node* node = &env.root;
  std::vector<Node*> path{node};
  std::vector<TrajStep> trajectory;
  double prev_eval = env.root_eval;

  auto kbe_observe = [&](const engine::GameState& s) {
    double e = evaluate_state(s);
    if (cfg.kbe && env.ctx.kb && e != prev_eval && !s.last_events.empty())
      env.ctx.kb->observe(s.last_events, e - prev_eval);
    prev_eval = e;
  };

  // Selection.
  while (state.ongoing()) {
    auto legal = engine::legal_actions(state);
    bool fully_expanded = true;
    for (engine::Action a : legal)
      fully_expanded &= (node->find_child(a) != nullptr);
    if (!fully_expanded) break;

    if (cfg.novelty && !node->group_tested)
      novelty_group_test(*node, state, env.rng);

    std::vector<Node*> candidates;
    for (engine::Action a : engine::kAllActions) {
      Node* c = node->find_child(a);
      if (c && !c->pruned) candidates.push_back(c);
    }
    if (candidates.empty()) break;
    if (cfg.novelty)
      candidates = filter_children(candidates, env.bounds.norm(node->avg()));

    Node* chosen = nullptr;
    for (Node* c : candidates) {
      if (c->visits <= 0) { chosen = c; break; }  // unvisited first
    }
    int cell = avatar_cell(state);
    if (!chosen) {
      double best = -std::numeric_limits<double>::infinity();
      for (Node* c : candidates) {
        double v = selection_value(env, *node, *c, cell);
        if (v > best) { best = v; chosen = c; }
      }
    }

    trajectory.push_back({cell, chosen->action});
    if (node == &env.root && !chosen->cached_states.empty()) {
      // Depth-1 BFTI cache: reuse a stored state instead of advancing.
      state = *consume_cached_state(*chosen);
      prev_eval = evaluate_state(state);
    } else {
      engine::advance(state, chosen->action, env.rng);
      kbe_observe(state);
    }
    node = chosen;
    path.push_back(node);
    if (cfg.novelty) capture_test_record(*node, state);
  }

  // Play-out; the whole play-out is added to the tree.
  for (int depth = 0; depth < cfg.playout_depth && state.ongoing(); depth++) {
    auto legal = engine::legal_actions(state);
    engine::Action a;
    int cell = avatar_cell(state);
    if (cfg.nst && env.ctx.ngrams) {
      std::vector<TrajStep> recent;
      size_t take = std::min<size_t>(trajectory.size(), cfg.nst_max_n - 1);
      recent.assign(trajectory.end() - take, trajectory.end());
      a = nst_playout_action(legal, recent, cell, *env.ctx.ngrams,
                             cfg.nst_epsilon, cfg.nst_visit_threshold,
                             cfg.nst_max_n, env.rng);
    } else {
      a = legal[env.rng.uniform(static_cast<uint32_t>(legal.size()))];
    }
    engine::advance(state, a, env.rng);
    kbe_observe(state);
    Node& child = node->get_or_add_child(a);
    if (cfg.novelty) capture_test_record(child, state);
    trajectory.push_back({cell, a});
    node = &child;
    path.push_back(node);
  }

  double value = env.evaluate(state);

  // Loss avoidance on a first-visit loss.
  if (cfg.loss_avoidance && state.status == engine::Status::Loss &&
      path.size() > 1 && node->visits <= 0 && !node->la_visited) {
    node->la_visited = true;
    LAOutcome la = loss_avoid(env.root_state, path, value, env.evaluate,
                              env.bounds, env.rng, cfg.novelty);
    value = la.value;
  }

  for (Node* n : path) n->record_backprop(value);
  node->local_visits += 1.0;
  env.bounds.add(value);

  if ((cfg.ph && env.ctx.history) || (cfg.nst && env.ctx.ngrams)) {
    update_history_tables(cfg.ph ? env.ctx.history : nullptr,
                          cfg.nst ? env.ctx.ngrams : nullptr, trajectory,
                          env.bounds.norm(value), cfg.nst_max_n);
  }
}

}  // namespace

Node* recommend_child(Node& root, const ValueBounds& bounds,
                      bool novelty_on) {
  std::vector<Node*> candidates;
  for (engine::Action a : engine::kAllActions) {
    Node* c = root.find_child(a);
    if (c && !c->pruned && c->visits > 0) candidates.push_back(c);
  }
  if (candidates.empty()) return nullptr;

  auto best_of = [](const std::vector<Node*>& nodes) {
    Node* best = nullptr;
    for (Node* c : nodes)
      if (!best || c->avg() > best->avg()) best = c;
    return best;
  };

  if (novelty_on) {
    std::vector<Node*> novel;
    for (Node* c : candidates)
      if (c->mark != NoveltyMark::NotNovel) novel.push_back(c);
    if (!novel.empty()) {
      Node* best_novel = best_of(novel);
      if (bounds.norm(best_novel->avg()) >= 0.5) return best_novel;
      // Best novel alternative looks bad: consider everything.
    }
  }
  return best_of(candidates);
}

SearchResult run_search(const engine::GameState& root_state, Node& root,
                        SearchContext& ctx, Rng& rng,
                        const BudgetOverride& budget) {
  const SearchConfig& cfg = ctx.cfg;
  SearchResult result;
  ValueBounds bounds;

  // The wall clock starts before the knowledge snapshot and the tree
  // initialization, so that setup work is charged against the tick budget.
  const auto start = Clock::now();

  double root_eval = evaluate_state(root_state);
  DistanceSnapshot snapshot;
  if (cfg.kbe && ctx.kb) snapshot = distance_snapshot(root_state, *ctx.kb);
  Evaluator evaluate = [&](const engine::GameState& s) {
    double v = evaluate_state(s);
    if (cfg.kbe && ctx.kb && v == root_eval)
      v += kbe_bonus(snapshot, s, *ctx.kb);
    return v;
  };

  if (cfg.novelty && !root.tuples_set) {
    root.tuple_store = engine::feature_atoms(root_state);
    root.tuples_set = true;
  }
  if (cfg.bfti)
    bfti_initialize(root_state, root, cfg.bfti_samples, evaluate, bounds, rng,
                    cfg.novelty, cfg.bfti_resample_reused);

  SimEnv env{root_state, root, ctx, bounds, evaluate, root_eval, rng};

  const double budget_ms = budget.use ? budget.ms : cfg.budget_ms;
  const int budget_sims = budget.use ? budget.sims : cfg.budget_sims;
  while (true) {
    if (cfg.budget_kind == BudgetKind::WallClockMs) {
      double elapsed =
          std::chrono::duration<double, std::milli>(Clock::now() - start)
              .count();
      if (elapsed >= budget_ms) break;
    } else if (result.simulations >= budget_sims) {
      break;
    }
    if (cfg.max_nodes > 0 && count_nodes(root) >= cfg.max_nodes) break;

    auto sim_start = Clock::now();
    simulate(env);
    result.simulations++;
    double sim_s =
        std::chrono::duration<double>(Clock::now() - sim_start).count();
    result.last_sim_seconds = sim_s;
    result.max_sim_seconds = std::max(result.max_sim_seconds, sim_s);
  }

  Node* choice = recommend_child(root, bounds, cfg.novelty);
  if (choice) {
    result.action = choice->action;
  } else {
    auto legal = engine::legal_actions(root_state);
    result.action = legal.empty() ? engine::Action::Nil : legal.front();
    result.fallback = true;
  }

  for (engine::Action a : engine::kAllActions) {
    if (Node* c = root.find_child(a))
      result.child_stats.push_back(
          {a, c->visits, c->avg(), c->pruned, c->mark});
  }
  return result;
}

}  // namespace olm::search
