#include "olmcts/search/knowledge.hpp"

#include <cmath>

#include "olmcts/pathfind/astar.hpp"

namespace olm::search {

void KnowledgeBase::init(const engine::GameSpec& spec) {
  types_.assign(spec.classes.size(), {});
  for (const auto& cls : spec.classes) {
    TypeKnowledge& t = types_[cls.type_id];
    switch (cls.category) {
      case engine::Category::Npc: t.weight = 0.1; break;
      case engine::Category::Movable: t.weight = 0.25; break;
      case engine::Category::Resource:
      case engine::Category::Portal: t.weight = 1.0; break;
      default: t.weight = 0.0; break;
    }
    t.alpha = 0.8;
  }
}

void KnowledgeBase::tick_increment() {
  for (auto& t : types_) t.weight += 1e-4;
}

void KnowledgeBase::observe(const std::vector<engine::CollisionEvent>& events,
                            double delta) {
  // Each distinct type is credited once per transition.
  std::vector<int> seen;
  for (const auto& e : events) {
    bool dup = false;
    for (int t : seen) dup |= (t == e.other_type);
    if (dup) continue;
    seen.push_back(e.other_type);
    TypeKnowledge& t = types_[e.other_type];
    t.delta_sum += delta;
    t.event_count += 1;
    double mean = t.delta_sum / t.event_count;
    t.weight = kb_weight_update(t.weight, mean, t.alpha);
    t.alpha = kb_alpha_update(t.alpha);
  }
}

bool KnowledgeBase::eligible(int type) const {
  return std::fabs(types_[type].weight) >= kIgnoreWeightThreshold;
}

DistanceSnapshot distance_snapshot(const engine::GameState& root_state,
                                   const KnowledgeBase& kb) {
  DistanceSnapshot snap;
  snap.valid = true;
  snap.d0.assign(kb.num_types(), std::nullopt);
  if (!root_state.avatar_alive()) return snap;
  const auto& av = root_state.avatar();
  for (size_t t = 0; t < kb.num_types(); t++) {
    if (!kb.eligible(static_cast<int>(t))) continue;
    snap.d0[t] = pathfind::distance_to_nearest(root_state, av.x, av.y,
                                               static_cast<int>(t));
  }
  return snap;
}

double kbe_raw(const DistanceSnapshot& snapshot,
               const engine::GameState& terminal_state,
               const KnowledgeBase& kb) {
  if (!terminal_state.avatar_alive()) return 0.0;
  const auto& av = terminal_state.avatar();
  double raw = 0.0;
  for (size_t t = 0; t < kb.num_types(); t++) {
    if (!kb.eligible(static_cast<int>(t))) continue;
    if (!snapshot.d0[t].has_value()) continue;
    auto dt = pathfind::distance_to_nearest(terminal_state, av.x, av.y,
                                            static_cast<int>(t));
    if (!dt.has_value()) continue;  // unreachable contributes 0
    raw += kb.weight(static_cast<int>(t)) *
           static_cast<double>(*snapshot.d0[t] - *dt);
  }
  return raw;
}

double kbe_bonus(const DistanceSnapshot& snapshot,
                 const engine::GameState& terminal_state,
                 const KnowledgeBase& kb) {
  bool any_eligible = false;
  for (size_t t = 0; t < kb.num_types(); t++)
    any_eligible |= kb.eligible(static_cast<int>(t));
  if (!any_eligible || !snapshot.valid) return 0.0;
  double raw = kbe_raw(snapshot, terminal_state, kb);
  // Smooth monotone squashing of the raw sum into [0, 0.5].
  return 0.25 + 0.25 * raw / (1.0 + std::fabs(raw));
}

}  // namespace olm::search
