#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "olmcts/engine/state.hpp"
#include "olmcts/search/node.hpp"
#include "olmcts/search/value.hpp"
#include "olmcts/rng.hpp"

namespace olm::search {

using Evaluator = std::function<double(const engine::GameState&)>;

// Re-roots the tree at the child of the played action, scaling every
// retained node's statistics by gamma. Returns a fresh root when the child
// does not exist. Pruned flags and BFTI caches are cleared on the new root.
std::unique_ptr<Node> reuse_tree(std::unique_ptr<Node> old_root,
                                 engine::Action played_action, double gamma);

struct BftiResult {
  int sampled_actions = 0;
  int pruned_actions = 0;
};

// 1-ply breadth-first initialization with safety prepruning: samples every
// root action `samples` times, backpropagates the mean evaluation once into
// the child and the root, caches the generated states on the child, and
// prunes actions whose immediate-loss count exceeds the minimum observed.
// Children that already carry visits (tree reuse) are left alone unless
// `resample_reused`.
BftiResult bfti_initialize(const engine::GameState& root_state, Node& root,
                           int samples, const Evaluator& evaluate,
                           ValueBounds& bounds, Rng& rng,
                           bool capture_test_records, bool resample_reused);

// Removes and returns one BFTI-cached state (FIFO), if any.
std::optional<engine::GameState> consume_cached_state(Node& node);

}  // namespace olm::search
