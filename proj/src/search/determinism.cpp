#include "olmcts/search/determinism.hpp"

namespace olm::search {

DeterminismVerdict classify(const engine::GameState& initial_state,
                            const ProbeConfig& probe, Rng& rng) {
  for (const auto& o : initial_state.objects) {
    if (o.alive && initial_state.spec->classes[o.type].category ==
                       engine::Category::Npc)
      return {false, VerdictReason::NpcObserved};
  }

  auto legal = engine::legal_actions(initial_state);
  for (int m = 0; m < probe.sequences; m++) {
    std::vector<engine::Action> seq(probe.length);
    for (auto& a : seq)
      a = legal[rng.uniform(static_cast<uint32_t>(legal.size()))];

    std::string reference;
    for (int r = 0; r < probe.reps; r++) {
      engine::GameState s = initial_state;
      for (engine::Action a : seq) {
        if (!s.ongoing()) break;  // compare at the stopping point
        engine::advance(s, a, rng);
      }
      std::string bytes = engine::serialize(s);
      if (r == 0)
        reference = std::move(bytes);
      else if (bytes != reference)
        return {false, VerdictReason::Divergence};
    }
  }
  return {true, VerdictReason::AllProbesAgree};
}

void apply_mode(const DeterminismVerdict& verdict, SearchConfig& config) {
  if (!verdict.deterministic) return;
  config.gamma = 1.0;
  config.disable_first_ply_reset = true;
  config.mixmax = true;
}

}  // namespace olm::search
