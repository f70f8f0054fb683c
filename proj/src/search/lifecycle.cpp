#include "olmcts/search/lifecycle.hpp"

#include <algorithm>
#include <limits>

namespace olm::search {

namespace {

// Scales statistics by gamma and recomputes max-observed-score bottom-up
// (scaling a max directly would break the max >= average invariant).
double decay_subtree(Node& node, double gamma) {
  node.score_sum *= gamma;
  node.visits *= gamma;
  node.local_visits *= gamma;
  node.unpropagated_visits *= gamma;
  double max = node.visits > 0 ? node.score_sum / node.visits
                               : -std::numeric_limits<double>::infinity();
  for (auto& c : node.children)
    max = std::max(max, decay_subtree(*c, gamma));
  node.max_score = max;
  return max;
}

}  // namespace

std::unique_ptr<Node> reuse_tree(std::unique_ptr<Node> old_root,
                                 engine::Action played_action, double gamma) {
  std::unique_ptr<Node> new_root;
  if (old_root) {
    for (auto& c : old_root->children) {
      if (c->action == played_action) {
        new_root = std::move(c);
        break;
      }
    }
  }
  if (!new_root) return std::make_unique<Node>();
  new_root->parent = nullptr;
  new_root->pruned = false;
  new_root->cached_states.clear();
  if (gamma != 1.0) decay_subtree(*new_root, gamma);
  return new_root;
}

BftiResult bfti_initialize(const engine::GameState& root_state, Node& root,
                           int samples, const Evaluator& evaluate,
                           ValueBounds& bounds, Rng& rng,
                           bool capture_test_records, bool resample_reused) {
  BftiResult result;
  std::vector<Node*> sampled;
  std::vector<int> loss_counts;

  for (engine::Action a : engine::legal_actions(root_state)) {
    Node& child = root.get_or_add_child(a);
    if (child.visits > 0 && !resample_reused) continue;  // has a prior
    int losses = 0;
    double sum = 0.0;
    for (int m = 0; m < samples; m++) {
      engine::GameState s = root_state;
      engine::advance(s, a, rng);
      sum += evaluate(s);
      if (s.status == engine::Status::Loss) losses++;
      if (capture_test_records && !child.has_test_record) {
        child.test_atoms = engine::feature_atoms(s);
        child.test_score = s.score;
        child.has_test_record = true;
      }
      child.cached_states.push_back(std::move(s));
    }
    double mean = sum / samples;
    child.record_backprop(mean);
    child.local_visits += 1.0;
    root.record_backprop(mean);
    bounds.add(mean);
    sampled.push_back(&child);
    loss_counts.push_back(losses);
    result.sampled_actions++;
  }

  if (!sampled.empty()) {
    int min_losses = *std::min_element(loss_counts.begin(), loss_counts.end());
    for (size_t i = 0; i < sampled.size(); i++) {
      if (loss_counts[i] > min_losses) {
        sampled[i]->pruned = true;
        result.pruned_actions++;
      }
    }
  }
  return result;
}

std::optional<engine::GameState> consume_cached_state(Node& node) {
  if (node.cached_states.empty()) return std::nullopt;
  engine::GameState s = std::move(node.cached_states.front());
  node.cached_states.pop_front();
  return s;
}

}  // namespace olm::search
