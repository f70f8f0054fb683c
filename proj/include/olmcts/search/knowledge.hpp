#pragma once

#include <optional>
#include <vector>

#include "olmcts/engine/state.hpp"

namespace olm::search {

struct TypeKnowledge {
  double weight = 0.0;
  double delta_sum = 0.0;
  long event_count = 0;
  double alpha = 0.8;
};

inline constexpr double kIgnoreWeightThreshold = 1e-4;

// Per-object-type weights learned from collision events during simulations.
class KnowledgeBase {
 public:
  void init(const engine::GameSpec& spec);

  // += 1e-4 on every weight, once per real game tick.
  void tick_increment();

  // Credits the score change `delta` to every distinct type occurring in
  // `events`, then applies the weight and learning-rate updates.
  void observe(const std::vector<engine::CollisionEvent>& events,
               double delta);

  double weight(int type) const { return types_[type].weight; }
  const TypeKnowledge& entry(int type) const { return types_[type]; }
  size_t num_types() const { return types_.size(); }
  bool eligible(int type) const;

 private:
  std::vector<TypeKnowledge> types_;
};

// Single weight-update step (exposed for formula tests): returns the new
// weight given the running event mean and the learning rate.
inline double kb_weight_update(double w, double delta_mean, double alpha) {
  return w + (delta_mean - w) * alpha;
}
inline double kb_alpha_update(double alpha) {
  return std::max(0.1, 0.75 * alpha);
}

// Avatar-to-nearest-object distances per type, computed once per tick from
// the root state.
struct DistanceSnapshot {
  std::vector<std::optional<int>> d0;
  bool valid = false;
};

DistanceSnapshot distance_snapshot(const engine::GameState& root_state,
                                   const KnowledgeBase& kb);

// Raw distance-weighted sum over eligible types with both ends reachable.
double kbe_raw(const DistanceSnapshot& snapshot,
               const engine::GameState& terminal_state,
               const KnowledgeBase& kb);

// Tie-breaking bonus in [0, 0.5]; 0 when no type is eligible.
double kbe_bonus(const DistanceSnapshot& snapshot,
                 const engine::GameState& terminal_state,
                 const KnowledgeBase& kb);

}  // namespace olm::search
