#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "olmcts/bench/harness.hpp"

namespace {

using namespace olm;

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& presets, const std::string& suite,
            const std::string& budget, uint64_t seed, int jobs, int reps,
            const std::string& out_dir, const std::string& games_dir,
            bool quiet) {
  bench::ExperimentConfig cfg;
  cfg.presets = presets;
  cfg.budget = bench::parse_budget(budget);
  cfg.master_seed = seed;
  cfg.jobs = jobs;
  cfg.repetitions = reps;
  cfg.out_dir = out_dir;
  if (!suite.empty()) cfg.games = bench::resolve_suite(games_dir, suite);
  if (!config_path.empty())
    bench::apply_config(bench::load_config_file(config_path), games_dir, cfg);
  if (cfg.games.empty()) {
    std::cerr << "no games selected; pass --suite or a config file\n";
    return 1;
  }
  if (cfg.presets.empty()) {
    std::cerr << "no presets selected; pass --preset or a config file\n";
    return 1;
  }

  auto progress = [&](size_t done, size_t total, const bench::RunRecord& r) {
    if (quiet) return;
    std::cout << "[" << done << "/" << total << "] " << r.preset << " "
              << r.game << " L" << r.level << " r" << r.repetition << " "
              << (r.win ? "win" : "loss") << " t=" << r.duration_ticks
              << "\n";
    std::cout.flush();
  };
  auto records = bench::run_experiment(cfg, progress);

  bench::SummaryTable table = bench::summarize(records);
  std::ofstream(cfg.out_dir + "/summary.md") << bench::summary_to_markdown(table);
  std::ofstream(cfg.out_dir + "/summary.csv") << bench::summary_to_csv(table);
  if (!quiet)
    std::cout << "\n" << bench::summary_to_markdown(table)
              << "\nwrote " << cfg.out_dir << "/records.csv, summary.md, summary.csv\n";
  return 0;
}

int cmd_summarize(const std::string& records_path,
                  const std::string& out_dir) {
  auto records = bench::load_records(records_path);
  if (records.empty()) {
    std::cerr << "no records in " << records_path << "\n";
    return 1;
  }
  bench::SummaryTable table = bench::summarize(records);
  std::cout << bench::summary_to_markdown(table);
  if (!out_dir.empty()) {
    std::ofstream(out_dir + "/summary.md") << bench::summary_to_markdown(table);
    std::ofstream(out_dir + "/summary.csv") << bench::summary_to_csv(table);
  }
  return 0;
}

int cmd_compare(const std::string& records_path, const std::string& preset_a,
                const std::string& preset_b) {
  auto records = bench::load_records(records_path);
  if (records.empty()) {
    std::cerr << "no records in " << records_path << "\n";
    return 1;
  }
  std::cout << bench::compare_to_markdown(
      bench::compare(records, preset_a, preset_b));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-game MCTS benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, suite, budget = "sims:100", out_dir = "out";
  std::string games_dir = "games";
  std::vector<std::string> presets;
  uint64_t seed = 1;
  int jobs = 1, reps = 15;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run an experiment grid");
  run->add_option("--config", config_path, "Config file (key=value sections)");
  run->add_option("--preset", presets, "Agent preset, repeatable");
  run->add_option("--suite", suite,
                  "'default' or comma-separated game names");
  run->add_option("--budget", budget, "ms:N or sims:N");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--jobs", jobs, "Parallel workers");
  run->add_option("--reps", reps, "Repetitions per level");
  run->add_option("--out", out_dir, "Output directory (journal lives here)");
  run->add_option("--games-dir", games_dir, "Directory with .game/.level files");
  run->add_flag("--quiet", quiet, "Suppress progress output");

  std::string records_path = "out/records.csv";
  std::string sum_out;
  auto* summarize = app.add_subcommand("summarize", "Summarize records.csv");
  summarize->add_option("--records", records_path, "Path to records.csv");
  summarize->add_option("--out", sum_out, "Directory for summary.md/.csv");

  std::string preset_a, preset_b;
  auto* compare = app.add_subcommand("compare", "Compare two presets");
  compare->add_option("--records", records_path, "Path to records.csv");
  compare->add_option("preset_a", preset_a, "First preset")->required();
  compare->add_option("preset_b", preset_b, "Second preset")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, presets, suite, budget, seed, jobs, reps,
                     out_dir, games_dir, quiet);
    if (summarize->parsed()) return cmd_summarize(records_path, sum_out);
    if (compare->parsed()) return cmd_compare(records_path, preset_a, preset_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
