#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "olmcts/agent/agent.hpp"
#include "olmcts/search/config.hpp"

namespace olm::bench {

struct GameEntry {
  std::string name;
  std::string spec_path;
  std::vector<std::string> level_paths;
};

struct BudgetSpec {
  search::BudgetKind kind = search::BudgetKind::Simulations;
  double ms = 40.0;
  int sims = 100;
};

// Parses "ms:40" or "sims:100".
BudgetSpec parse_budget(const std::string& text);

struct ExperimentConfig {
  std::vector<std::string> presets;
  std::vector<GameEntry> games;
  int repetitions = 15;
  BudgetSpec budget;
  uint64_t master_seed = 1;
  int jobs = 1;
  std::string out_dir = "out";
  // Optional per-run overrides keyed onto every preset (used by sweeps).
  std::optional<double> gamma_override;
};

struct RunRecord {
  std::string game;
  int level = 0;
  int repetition = 0;
  std::string preset;
  uint64_t seed = 0;
  bool win = false;
  double score = 0.0;
  int duration_ticks = 0;
  int tick_cap = 0;
  bool deterministic = false;
  double mean_sims_per_tick = 0.0;
  double max_decision_ms = 0.0;
  int over_budget_ticks = 0;  // decision time > budget + that tick's max sim
  int ticks = 0;
};

// Deterministic 64-bit seed for one cell; documented so single cells can be
// reproduced: fnv1a over "<master>|<game>|<level>|<rep>|<preset>".
uint64_t cell_seed(uint64_t master_seed, const std::string& game, int level,
                   int repetition, const std::string& preset);

// Plays one full game with a fresh agent and returns its record.
RunRecord run_cell(const GameEntry& game, int level, int repetition,
                   const std::string& preset, const ExperimentConfig& cfg);

using ProgressFn = std::function<void(size_t done, size_t total,
                                      const RunRecord& last)>;

// Runs every (game, level, repetition, preset) cell. records.csv in out_dir
// doubles as the journal: completed cells found there are not re-run, and
// each new record is appended as soon as it finishes. The returned list is
// sorted, so the result does not depend on jobs or on resume boundaries.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg,
                                      const ProgressFn& progress = {});

std::string records_header();
std::string record_to_csv(const RunRecord& r);
std::vector<RunRecord> load_records(const std::string& csv_path);

struct SummaryRow {
  std::string preset;
  std::string game;  // "total" for the totals row
  int n = 0;
  double win_pct = 0.0, win_ci = 0.0;
  int losses = 0;
  double early_loss_pct = 0.0, early_loss_ci = 0.0;
  double mean_sims = 0.0;
  double max_decision_ms = 0.0;
  double over_budget_tick_pct = 0.0;
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
};

SummaryTable summarize(const std::vector<RunRecord>& records);
std::string summary_to_markdown(const SummaryTable& table);
std::string summary_to_csv(const SummaryTable& table);

struct CompareRow {
  std::string game;
  double win_a = 0.0, ci_a = 0.0;
  double win_b = 0.0, ci_b = 0.0;
  double delta = 0.0;
  bool ci_disjoint = false;
  double z = 0.0;
  double p_value = 1.0;
};

struct CompareReport {
  std::string preset_a, preset_b;
  std::vector<CompareRow> rows;  // per game plus a "total" row
};

CompareReport compare(const std::vector<RunRecord>& records,
                      const std::string& preset_a,
                      const std::string& preset_b);
std::string compare_to_markdown(const CompareReport& report);

// Game discovery: <dir>/<name>.game with levels <dir>/<name>_<i>.level,
// i counted from 0 while files exist.
GameEntry discover_game(const std::string& games_dir, const std::string& name);

// "default" resolves to the bundled eight-game suite; anything else is a
// comma-separated list of game names.
std::vector<GameEntry> resolve_suite(const std::string& games_dir,
                                     const std::string& suite);

// Key-value config file with [sections]; '#' and ';' comments.
std::map<std::string, std::string> load_config_file(const std::string& path);
void apply_config(const std::map<std::string, std::string>& kv,
                  const std::string& games_dir, ExperimentConfig& cfg);

}  // namespace olm::bench
