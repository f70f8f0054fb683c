#pragma once

#include <vector>

#include "olmcts/engine/state.hpp"
#include "olmcts/search/lifecycle.hpp"
#include "olmcts/search/node.hpp"
#include "olmcts/rng.hpp"

namespace olm::search {

struct LAOutcome {
  double value = 0.0;  // the value to backpropagate
  bool replay_terminated_early = false;
  int siblings_generated = 0;
};

// First-visit loss handling: replays the action path (minus the last action)
// from a fresh copy of the root state, generates one state per missing
// sibling of the losing node, stores each sibling's own evaluation locally,
// and returns the maximum of the losing evaluation and all sibling
// evaluations. If the open-loop replay hits a terminal state early, that
// state's evaluation is returned instead and no siblings are generated.
//
// `path` runs from the root to the losing node.
LAOutcome loss_avoid(const engine::GameState& root_state,
                     const std::vector<Node*>& path, double losing_eval,
                     const Evaluator& evaluate, ValueBounds& bounds, Rng& rng,
                     bool capture_test_records);

}  // namespace olm::search
