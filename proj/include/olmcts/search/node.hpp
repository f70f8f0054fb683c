#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <vector>

#include "olmcts/engine/state.hpp"

namespace olm::search {

enum class NoveltyMark : uint8_t { Untested, Novel, NotNovel };

// Node of the open-loop tree: keyed by the action path from the root, it
// stands for the set of states reachable by that path.
struct Node {
  engine::Action action = engine::Action::Nil;  // incoming (unused at root)
  Node* parent = nullptr;
  std::vector<std::unique_ptr<Node>> children;

  double score_sum = 0.0;
  double visits = 0.0;  // real: decay scales it
  double local_visits = 0.0;  // visits that ended at this node
  double unpropagated_visits = 0.0;  // stored locally only (LA siblings)
  double max_score = -std::numeric_limits<double>::infinity();

  NoveltyMark mark = NoveltyMark::Untested;
  std::vector<uint64_t> tuple_store;  // atoms; valid iff tuples_set
  bool tuples_set = false;
  bool group_tested = false;  // this node's successors were novelty tested
  bool la_visited = false;
  bool pruned = false;  // safety prepruning

  std::deque<engine::GameState> cached_states;  // BFTI cache

  // One state record per node, kept for novelty group tests (and for the
  // brute-force oracle in tests).
  bool has_test_record = false;
  engine::FeatureAtomSet test_atoms;
  double test_score = 0.0;

  Node* find_child(engine::Action a) const {
    for (const auto& c : children)
      if (c->action == a) return c.get();
    return nullptr;
  }

  Node& get_or_add_child(engine::Action a) {
    if (Node* c = find_child(a)) return *c;
    auto child = std::make_unique<Node>();
    child->action = a;
    child->parent = this;
    children.push_back(std::move(child));
    return *children.back();
  }

  double avg() const { return visits > 0 ? score_sum / visits : 0.0; }

  void record_backprop(double value) {
    score_sum += value;
    visits += 1.0;
    max_score = std::max(max_score, value);
  }
};

inline size_t count_nodes(const Node& n) {
  size_t total = 1;
  for (const auto& c : n.children) total += count_nodes(*c);
  return total;
}

}  // namespace olm::search
