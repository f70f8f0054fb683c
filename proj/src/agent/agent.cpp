#include "olmcts/agent/agent.hpp"

#include <chrono>
#include <stdexcept>

#include "olmcts/search/lifecycle.hpp"
#include "olmcts/search/novelty.hpp"

namespace olm::agent {

namespace {
using Clock = std::chrono::steady_clock;
}

AgentConfig preset_config(const std::string& name) {
  AgentConfig cfg;
  cfg.preset = name;
  search::SearchConfig& s = cfg.search;
  auto with_bfti = [&] { s.bfti = true; };
  if (name == "vanilla") {
  } else if (name == "bfti") {
    with_bfti();
  } else if (name == "ph") {
    with_bfti();
    s.ph = true;
  } else if (name == "nst") {
    with_bfti();
    s.nst = true;
  } else if (name == "tr") {
    with_bfti();
    s.tree_reuse = true;
  } else if (name == "la") {
    with_bfti();
    s.loss_avoidance = true;
  } else if (name == "nbp") {
    with_bfti();
    s.novelty = true;
  } else if (name == "kbe") {
    with_bfti();
    s.kbe = true;
  } else if (name == "dgd") {
    with_bfti();
    cfg.dgd = true;
  } else if (name == "all" || name == "no-dgd" || name == "no-bfti") {
    s.ph = s.nst = s.tree_reuse = s.bfti = true;
    s.loss_avoidance = s.novelty = s.kbe = true;
    cfg.dgd = true;
    if (name == "no-dgd") cfg.dgd = false;
    if (name == "no-bfti") s.bfti = false;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"vanilla", "bfti", "ph",  "nst",    "tr",      "la",
          "nbp",     "kbe",  "dgd", "no-dgd", "no-bfti", "all"};
}

Agent::Agent(AgentConfig cfg, uint64_t seed)
    : cfg_(std::move(cfg)), rng_(seed), root_(std::make_unique<search::Node>()) {}

void Agent::on_game_start(const engine::GameState& initial_state) {
  auto start = Clock::now();
  if (cfg_.dgd) {
    search::ProbeConfig probe{cfg_.search.probe_sequences,
                              cfg_.search.probe_length,
                              cfg_.search.probe_reps};
    verdict_ = search::classify(initial_state, probe, rng_);
    search::apply_mode(verdict_, cfg_.search);
  }
  if (cfg_.search.kbe) kb_.init(*initial_state.spec);

  // The rest of the startup budget runs the search itself; the tree is kept
  // for tick 1 only under tree reuse.
  search::BudgetOverride budget;
  budget.use = true;
  budget.sims = cfg_.search.startup_sims;
  if (cfg_.search.budget_kind == search::BudgetKind::WallClockMs) {
    double spent =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    budget.ms = std::max(0.0, cfg_.search.startup_budget_ms - spent);
    if (budget.ms <= 0.0) return;
  } else if (budget.sims <= 0) {
    return;
  }
  search::SearchContext ctx{cfg_.search,
                            cfg_.search.ph ? &history_ : nullptr,
                            cfg_.search.nst ? &ngrams_ : nullptr,
                            cfg_.search.kbe ? &kb_ : nullptr};
  search::run_search(initial_state, *root_, ctx, rng_, budget);
  if (!cfg_.search.tree_reuse) root_ = std::make_unique<search::Node>();
}

engine::Action Agent::act(const engine::GameState& state) {
  auto start = Clock::now();
  if (cfg_.search.kbe) kb_.tick_increment();

  if (cfg_.search.tree_reuse) {
    if (last_action_) {
      root_ = search::reuse_tree(std::move(root_), *last_action_,
                                 cfg_.search.gamma);
      history_.decay(cfg_.search.gamma);
      ngrams_.decay(cfg_.search.gamma);
    }
    if (cfg_.search.novelty && !cfg_.search.disable_first_ply_reset)
      search::reset_first_ply_marks(*root_);
  } else {
    root_ = std::make_unique<search::Node>();
  }

  search::SearchContext ctx{cfg_.search,
                            cfg_.search.ph ? &history_ : nullptr,
                            cfg_.search.nst ? &ngrams_ : nullptr,
                            cfg_.search.kbe ? &kb_ : nullptr};

  // Charge the per-tick bookkeeping above against the wall-clock budget so
  // the whole decision stays within budget + one simulation.
  search::BudgetOverride budget;
  budget.use = true;
  budget.sims = cfg_.search.budget_sims;
  budget.ms = cfg_.search.budget_ms;
  if (cfg_.search.budget_kind == search::BudgetKind::WallClockMs) {
    double spent =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    budget.ms = std::max(0.0, cfg_.search.budget_ms - spent);
  }
  search::SearchResult result =
      search::run_search(state, *root_, ctx, rng_, budget);

  TickStats stats;
  stats.decision_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  stats.max_sim_seconds = result.max_sim_seconds;
  stats.simulations = result.simulations;
  stats.fallback = result.fallback;
  tick_stats_.push_back(stats);

  last_action_ = result.action;
  return result.action;
}

}  // namespace olm::agent
