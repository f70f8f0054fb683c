#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olmcts/engine/state.hpp"
#include "olmcts/search/determinism.hpp"
#include "olmcts/search/mcts.hpp"
#include "olmcts/rng.hpp"

namespace olm::agent {

struct AgentConfig {
  std::string preset = "custom";
  search::SearchConfig search;
  bool dgd = false;
};

// Named presets. Single-enhancement presets stack on top of BFTI, matching
// how the enhancements were evaluated; "vanilla" has everything off.
//   vanilla, bfti, ph, nst, tr, la, nbp, kbe, dgd, no-dgd, no-bfti, all
AgentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

struct TickStats {
  double decision_seconds = 0.0;
  double max_sim_seconds = 0.0;
  int simulations = 0;
  bool fallback = false;
};

// Per-game controller: owns the tree, the PH/NST tables, the knowledge base
// and the rng; runs the startup probe and one budgeted search per tick.
class Agent {
 public:
  Agent(AgentConfig cfg, uint64_t seed);

  void on_game_start(const engine::GameState& initial_state);
  engine::Action act(const engine::GameState& state);

  const search::DeterminismVerdict& verdict() const { return verdict_; }
  const AgentConfig& config() const { return cfg_; }
  const std::vector<TickStats>& tick_stats() const { return tick_stats_; }
  const search::Node* tree() const { return root_.get(); }

 private:
  AgentConfig cfg_;
  Rng rng_;
  std::unique_ptr<search::Node> root_;
  search::HistoryTable history_;
  search::NGramTable ngrams_;
  search::KnowledgeBase kb_;
  search::DeterminismVerdict verdict_;
  std::optional<engine::Action> last_action_;
  std::vector<TickStats> tick_stats_;
};

}  // namespace olm::agent
