#pragma once

#include <vector>

#include "olmcts/engine/state.hpp"
#include "olmcts/search/node.hpp"
#include "olmcts/rng.hpp"

namespace olm::search {

// Union of tuple stores collected from node's parent up to the root. This
// realizes the path-local neighborhood: left-sibling atoms are accumulated
// incrementally inside the group test itself.
engine::FeatureAtomSet neighborhood_atoms(const Node& node);

// A child is exempt (always novel) on a score gain, or on a movement action
// in restricted-axis games or when the avatar moves at most half a cell per
// tick.
bool novelty_exempt(double child_score, double parent_score,
                    engine::Action action, const engine::GameSpec& spec);

// Novelty tests all children of `parent` (one state per child), assigns
// marks, populates tuple stores, and propagates the all-children-not-novel
// mark upward. Children without a recorded test state get one generated by
// advancing a copy of `parent_state`.
void novelty_group_test(Node& parent, const engine::GameState& parent_state,
                        Rng& rng);

// Selection-time filter: when the parent looks healthy (normalized average
// >= 0.5) only novel children stay; a dangerous parent keeps everything.
// Never returns an empty set for a nonempty input.
std::vector<Node*> filter_children(const std::vector<Node*>& children,
                                   double parent_normalized_avg);

// Clears marks and tuple stores of the root's direct children (tree reuse in
// nondeterministic games).
void reset_first_ply_marks(Node& new_root);

}  // namespace olm::search
