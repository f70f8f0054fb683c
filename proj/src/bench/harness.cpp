#include "olmcts/bench/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "olmcts/engine/spec_parser.hpp"

namespace olm::bench {

namespace fs = std::filesystem;

BudgetSpec parse_budget(const std::string& text) {
  BudgetSpec b;
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("budget must be ms:N or sims:N, got " + text);
  std::string kind = text.substr(0, colon);
  std::string value = text.substr(colon + 1);
  if (kind == "ms") {
    b.kind = search::BudgetKind::WallClockMs;
    b.ms = std::stod(value);
  } else if (kind == "sims") {
    b.kind = search::BudgetKind::Simulations;
    b.sims = std::stoi(value);
  } else {
    throw std::invalid_argument("budget must be ms:N or sims:N, got " + text);
  }
  return b;
}

uint64_t cell_seed(uint64_t master_seed, const std::string& game, int level,
                   int repetition, const std::string& preset) {
  std::ostringstream key;
  key << master_seed << '|' << game << '|' << level << '|' << repetition
      << '|' << preset;
  return fnv1a(key.str());
}

namespace {

// Preset names may carry a gamma suffix, e.g. "tr@0.4".
agent::AgentConfig make_agent_config(const std::string& preset,
                                     const ExperimentConfig& cfg) {
  std::string base = preset;
  std::optional<double> gamma;
  if (auto at = preset.find('@'); at != std::string::npos) {
    base = preset.substr(0, at);
    gamma = std::stod(preset.substr(at + 1));
  }
  agent::AgentConfig ac = agent::preset_config(base);
  ac.preset = preset;
  ac.search.budget_kind = cfg.budget.kind;
  ac.search.budget_ms = cfg.budget.ms;
  ac.search.budget_sims = cfg.budget.sims;
  ac.search.startup_sims = cfg.budget.sims;
  if (gamma) ac.search.gamma = *gamma;
  if (cfg.gamma_override) ac.search.gamma = *cfg.gamma_override;
  return ac;
}

}  // namespace

RunRecord run_cell(const GameEntry& game, int level, int repetition,
                   const std::string& preset, const ExperimentConfig& cfg) {
  engine::GameSpec spec = engine::load_spec_file(game.spec_path);
  engine::Level lvl = engine::load_level_file(game.level_paths[level], spec);

  RunRecord rec;
  rec.game = game.name;
  rec.level = level;
  rec.repetition = repetition;
  rec.preset = preset;
  rec.seed = cell_seed(cfg.master_seed, game.name, level, repetition, preset);

  agent::AgentConfig ac = make_agent_config(preset, cfg);
  agent::Agent ag(ac, rec.seed);
  Rng game_rng(fnv1a("game-rng", rec.seed));

  engine::GameState state = engine::init_state(spec, lvl, rec.seed);
  ag.on_game_start(state);
  while (state.ongoing()) {
    engine::Action a = ag.act(state);
    engine::advance(state, a, game_rng);
  }

  rec.win = state.status == engine::Status::Win;
  rec.score = state.score;
  rec.duration_ticks = state.tick;
  rec.tick_cap = spec.tick_cap;
  rec.deterministic = ag.verdict().deterministic;
  rec.ticks = static_cast<int>(ag.tick_stats().size());
  double total_sims = 0.0;
  for (const auto& t : ag.tick_stats()) {
    total_sims += t.simulations;
    double ms = t.decision_seconds * 1000.0;
    rec.max_decision_ms = std::max(rec.max_decision_ms, ms);
    if (cfg.budget.kind == search::BudgetKind::WallClockMs &&
        ms > cfg.budget.ms + t.max_sim_seconds * 1000.0)
      rec.over_budget_ticks++;
  }
  rec.mean_sims_per_tick = rec.ticks > 0 ? total_sims / rec.ticks : 0.0;
  return rec;
}

std::string records_header() {
  return "game,level,repetition,preset,seed,win,score,duration_ticks,"
         "tick_cap,deterministic,mean_sims_per_tick,max_decision_ms,"
         "over_budget_ticks,ticks";
}

std::string record_to_csv(const RunRecord& r) {
  std::ostringstream out;
  out << r.game << ',' << r.level << ',' << r.repetition << ',' << r.preset
      << ',' << r.seed << ',' << (r.win ? 1 : 0) << ',' << r.score << ','
      << r.duration_ticks << ',' << r.tick_cap << ','
      << (r.deterministic ? 1 : 0) << ',' << r.mean_sims_per_tick << ','
      << r.max_decision_ms << ',' << r.over_budget_ticks << ',' << r.ticks;
  return out.str();
}

std::vector<RunRecord> load_records(const std::string& csv_path) {
  std::vector<RunRecord> records;
  std::ifstream in(csv_path);
  if (!in) return records;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 14) continue;  // truncated journal line after a crash
    RunRecord r;
    r.game = f[0];
    r.level = std::stoi(f[1]);
    r.repetition = std::stoi(f[2]);
    r.preset = f[3];
    r.seed = std::stoull(f[4]);
    r.win = f[5] == "1";
    r.score = std::stod(f[6]);
    r.duration_ticks = std::stoi(f[7]);
    r.tick_cap = std::stoi(f[8]);
    r.deterministic = f[9] == "1";
    r.mean_sims_per_tick = std::stod(f[10]);
    r.max_decision_ms = std::stod(f[11]);
    r.over_budget_ticks = std::stoi(f[12]);
    r.ticks = std::stoi(f[13]);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

struct Cell {
  size_t game_index;
  int level;
  int repetition;
  std::string preset;
};

std::string cell_key(const std::string& game, int level, int rep,
                     const std::string& preset) {
  std::ostringstream key;
  key << game << '|' << level << '|' << rep << '|' << preset;
  return key.str();
}

void sort_records(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return std::tie(a.preset, a.game, a.level, a.repetition) <
                     std::tie(b.preset, b.game, b.level, b.repetition);
            });
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg,
                                      const ProgressFn& progress) {
  fs::create_directories(cfg.out_dir);
  const std::string csv_path = cfg.out_dir + "/records.csv";

  std::vector<RunRecord> records = load_records(csv_path);
  std::set<std::string> done;
  for (const auto& r : records)
    done.insert(cell_key(r.game, r.level, r.repetition, r.preset));

  std::vector<Cell> cells;
  for (const auto& preset : cfg.presets)
    for (size_t g = 0; g < cfg.games.size(); g++)
      for (int lv = 0; lv < static_cast<int>(cfg.games[g].level_paths.size());
           lv++)
        for (int rep = 0; rep < cfg.repetitions; rep++)
          if (!done.count(cell_key(cfg.games[g].name, lv, rep, preset)))
            cells.push_back({g, lv, rep, preset});

  const size_t total = cells.size() + done.size();
  std::ofstream out(csv_path, std::ios::app);
  if (done.empty() && !cells.empty()) out << records_header() << '\n';

  std::mutex mu;
  size_t next = 0;
  size_t finished = done.size();
  auto worker = [&] {
    while (true) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= cells.size()) return;
        i = next++;
      }
      const Cell& c = cells[i];
      RunRecord rec = run_cell(cfg.games[c.game_index], c.level, c.repetition,
                               c.preset, cfg);
      {
        std::lock_guard<std::mutex> lock(mu);
        out << record_to_csv(rec) << '\n';
        out.flush();
        records.push_back(rec);
        finished++;
        if (progress) progress(finished, total, rec);
      }
    }
  };

  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; j++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  sort_records(records);
  return records;
}

GameEntry discover_game(const std::string& games_dir,
                        const std::string& name) {
  GameEntry entry;
  entry.name = name;
  entry.spec_path = games_dir + "/" + name + ".game";
  if (!fs::exists(entry.spec_path))
    throw std::runtime_error("game spec not found: " + entry.spec_path);
  for (int i = 0;; i++) {
    std::string path =
        games_dir + "/" + name + "_" + std::to_string(i) + ".level";
    if (!fs::exists(path)) break;
    entry.level_paths.push_back(path);
  }
  if (entry.level_paths.empty())
    throw std::runtime_error("no levels found for game: " + name);
  return entry;
}

std::vector<GameEntry> resolve_suite(const std::string& games_dir,
                                     const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "default") {
    names = {"frogs-analog",   "butterflies-analog", "chase-analog",
             "maze-analog",    "keys-doors-analog",  "shooter-analog",
             "camelrace-analog", "slowcross-analog"};
  } else {
    std::stringstream ss(suite);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) names.push_back(name);
  }
  std::vector<GameEntry> games;
  for (const auto& n : names) games.push_back(discover_game(games_dir, n));
  return games;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(in, line)) {
    if (auto pos = line.find_first_of("#;"); pos != std::string::npos)
      line.erase(pos);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad config line: " + line);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv,
                  const std::string& games_dir, ExperimentConfig& cfg) {
  auto get = [&](const std::string& key) -> const std::string* {
    if (auto it = kv.find("experiment." + key); it != kv.end())
      return &it->second;
    if (auto it = kv.find(key); it != kv.end()) return &it->second;
    return nullptr;
  };
  std::string dir = games_dir;
  if (const auto* v = get("games_dir")) dir = *v;
  if (const auto* v = get("presets")) {
    cfg.presets.clear();
    std::stringstream ss(*v);
    std::string p;
    while (std::getline(ss, p, ',')) {
      auto a = p.find_first_not_of(" \t");
      auto b = p.find_last_not_of(" \t");
      if (a != std::string::npos) cfg.presets.push_back(p.substr(a, b - a + 1));
    }
  }
  if (const auto* v = get("suite")) cfg.games = resolve_suite(dir, *v);
  if (const auto* v = get("repetitions")) cfg.repetitions = std::stoi(*v);
  if (const auto* v = get("budget")) cfg.budget = parse_budget(*v);
  if (const auto* v = get("seed")) cfg.master_seed = std::stoull(*v);
  if (const auto* v = get("jobs")) cfg.jobs = std::stoi(*v);
  if (const auto* v = get("out")) cfg.out_dir = *v;
  if (const auto* v = get("gamma")) cfg.gamma_override = std::stod(*v);
}

}  // namespace olm::bench
