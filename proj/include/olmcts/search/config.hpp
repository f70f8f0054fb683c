#pragma once

#include <cstddef>

namespace olm::search {

enum class BudgetKind { WallClockMs, Simulations };

struct SearchConfig {
  double exploration_c = 0.6;
  int playout_depth = 10;  // actions simulated after the selection step

  BudgetKind budget_kind = BudgetKind::WallClockMs;
  double budget_ms = 40.0;
  int budget_sims = 100;
  double startup_budget_ms = 1000.0;  // first-tick budget
  int startup_sims = 100;
  size_t max_nodes = 0;  // 0 = unlimited; stops starting new simulations

  // Enhancement toggles.
  bool ph = false;
  bool nst = false;
  bool tree_reuse = false;
  bool bfti = false;
  bool loss_avoidance = false;
  bool novelty = false;
  bool kbe = false;
  bool dgd = false;

  // Deterministic-mode switches, set by apply_mode.
  bool mixmax = false;
  bool disable_first_ply_reset = false;

  double gamma = 0.6;       // tree-reuse decay factor
  int bfti_samples = 5;     // M
  double ph_weight = 5.0;   // W
  int nst_max_n = 3;
  double nst_epsilon = 0.25;
  int nst_visit_threshold = 7;  // k

  int probe_sequences = 5;  // M
  int probe_length = 5;     // N
  int probe_reps = 3;       // R

  // After tree reuse, BFTI samples only root children without a prior.
  // Setting this resamples every action instead.
  bool bfti_resample_reused = false;
};

}  // namespace olm::search
