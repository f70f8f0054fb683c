#include "olmcts/search/loss_avoidance.hpp"

#include <algorithm>

namespace olm::search {

LAOutcome loss_avoid(const engine::GameState& root_state,
                     const std::vector<Node*>& path, double losing_eval,
                     const Evaluator& evaluate, ValueBounds& bounds, Rng& rng,
                     bool capture_test_records) {
  LAOutcome out;
  out.value = losing_eval;
  if (path.size() < 2) return out;  // loss at the root itself

  // Open-loop replay of the same action sequence, minus the last action.
  engine::GameState state = root_state;
  for (size_t i = 1; i + 1 < path.size(); i++) {
    engine::advance(state, path[i]->action, rng);
    if (!state.ongoing()) {
      // Nondeterministic divergence hit a terminal state: do not recurse.
      out.value = evaluate(state);
      out.replay_terminated_early = true;
      bounds.add(out.value);
      return out;
    }
  }

  Node* parent = path[path.size() - 2];
  Node* losing = path.back();
  double best = losing_eval;
  for (engine::Action a : engine::legal_actions(state)) {
    if (a == losing->action) continue;
    Node* sibling = parent->find_child(a);
    if (sibling && sibling->visits > 0) {
      best = std::max(best, sibling->avg());
      continue;
    }
    engine::GameState s = state;
    engine::advance(s, a, rng);
    double eval = evaluate(s);
    Node& node = parent->get_or_add_child(a);
    node.score_sum += eval;
    node.visits += 1.0;
    node.local_visits += 1.0;
    node.unpropagated_visits += 1.0;
    node.max_score = std::max(node.max_score, eval);
    if (capture_test_records && !node.has_test_record) {
      node.test_atoms = engine::feature_atoms(s);
      node.test_score = s.score;
      node.has_test_record = true;
    }
    bounds.add(eval);
    out.siblings_generated++;
    best = std::max(best, eval);
  }
  out.value = best;
  return out;
}

}  // namespace olm::search
