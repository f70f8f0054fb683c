#pragma once

#include "olmcts/engine/state.hpp"
#include "olmcts/search/config.hpp"
#include "olmcts/rng.hpp"

namespace olm::search {

struct ProbeConfig {
  int sequences = 5;  // M
  int length = 5;     // N
  int reps = 3;       // R
};

enum class VerdictReason { NpcObserved, Divergence, AllProbesAgree };

struct DeterminismVerdict {
  bool deterministic = false;
  VerdictReason reason = VerdictReason::AllProbesAgree;
};

// Startup probe: a game with any NPC is immediately nondeterministic;
// otherwise M random action sequences of length N are each replayed R times
// from copies of the initial state and compared by canonical serialization.
DeterminismVerdict classify(const engine::GameState& initial_state,
                            const ProbeConfig& probe, Rng& rng);

// Deterministic games: gamma forced to 1, first-ply novelty resets disabled,
// mixmax selection enabled. Nondeterministic games leave the config alone.
void apply_mode(const DeterminismVerdict& verdict, SearchConfig& config);

}  // namespace olm::search
