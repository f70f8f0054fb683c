// Fast acceptance criteria: exact-formula oracles, brute-force novelty-mark
// recomputation, an independent BFS pathfinding oracle, toggle isolation and
// bitwise reproducibility, determinism-detection soundness, and wall-clock
// budget compliance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "olmcts/agent/agent.hpp"
#include "olmcts/bench/stats.hpp"
#include "olmcts/engine/spec_parser.hpp"
#include "olmcts/engine/state.hpp"
#include "olmcts/pathfind/astar.hpp"
#include "olmcts/search/determinism.hpp"
#include "olmcts/search/knowledge.hpp"
#include "olmcts/search/lifecycle.hpp"
#include "olmcts/search/mcts.hpp"
#include "olmcts/search/novelty.hpp"
#include "olmcts/search/value.hpp"
#include "olmcts/rng.hpp"

namespace accept {
namespace {

using olm::Rng;
namespace engine = olm::engine;
namespace search = olm::search;
namespace pathfind = olm::pathfind;

const char* kSuite[] = {"butterflies-analog", "camelrace-analog",
                        "chase-analog",       "frogs-analog",
                        "keys-doors-analog",  "maze-analog",
                        "shooter-analog",     "slowcross-analog"};

engine::GameState bundled_state(const std::string& game, int level,
                                engine::GameSpec& spec_out, uint64_t seed) {
  spec_out = engine::load_spec_file(GAMES_DIR "/" + game + ".game");
  engine::Level lvl = engine::load_level_file(
      GAMES_DIR "/" + game + "_" + std::to_string(level) + ".level",
      spec_out);
  return engine::init_state(spec_out, lvl, seed);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

// ---------------------------------------------------------------------------
// Formula exactness: every scoring formula matches an independent long-double
// calculator on randomized inputs, to 10 significant digits.
// ---------------------------------------------------------------------------

struct SigDigitCheck {
  long double worst_rel = 0.0L;
  int checked = 0;
  int failed = 0;

  void expect(double actual, long double reference) {
    long double diff = fabsl(static_cast<long double>(actual) - reference);
    long double scale =
        std::max(fabsl(reference), fabsl(static_cast<long double>(actual)));
    long double rel = scale > 0.0L ? diff / scale : diff;
    worst_rel = std::max(worst_rel, rel);
    checked++;
    if (rel > 5e-10L) failed++;
  }
};

void check_evaluation(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> score(-500.0, 500.0);
  for (int i = 0; i < 50; i++) {
    engine::GameState s;
    s.score = score(gen);
    s.status = static_cast<engine::Status>(i % 3);
    long double ref = static_cast<long double>(s.score);
    if (s.status == engine::Status::Win) ref += 1e7L;
    if (s.status == engine::Status::Loss) ref -= 1e7L;
    sig.expect(search::evaluate_state(s), ref);
  }
}

void check_ucb1(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cdist(0.1, 2.0);
  for (int i = 0; i < 50; i++) {
    double np = std::exp(std::uniform_real_distribution<double>(
        std::log(0.3), std::log(1e6))(gen));
    double ni = unit(gen) * np;
    if (ni <= 0.0) ni = 1e-3;
    double q = unit(gen), c = cdist(gen);
    long double t = logl(static_cast<long double>(np));
    if (t < 0.0L) t = 0.0L;
    long double ref = static_cast<long double>(q) +
                      static_cast<long double>(c) *
                          sqrtl(t / static_cast<long double>(ni));
    sig.expect(search::ucb1(q, np, ni, c), ref);
  }
}

void check_ph_bias(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(0.5, 10.0);
  std::uniform_real_distribution<double> ndist(0.0, 1e4);
  for (int i = 0; i < 50; i++) {
    double h = unit(gen), w = wdist(gen), q = unit(gen), n = ndist(gen);
    long double ref =
        static_cast<long double>(h) * w /
        ((1.0L - static_cast<long double>(q)) * static_cast<long double>(n) +
         1.0L);
    sig.expect(search::ph_bias(h, w, q, n), ref);
  }
}

void check_mixmax(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; i++) {
    double q = unit(gen), m = unit(gen);
    long double ref = 0.75L * static_cast<long double>(q) +
                      0.25L * static_cast<long double>(m);
    sig.expect(search::mixmax_value(q, m), ref);
  }
}

void check_kb_updates(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> span(-2.0, 2.0);
  std::uniform_real_distribution<double> adist(0.05, 1.0);
  for (int i = 0; i < 50; i++) {
    double w = span(gen), m = span(gen), a = adist(gen);
    long double ref = static_cast<long double>(w) +
                      (static_cast<long double>(m) -
                       static_cast<long double>(w)) *
                          static_cast<long double>(a);
    sig.expect(search::kb_weight_update(w, m, a), ref);
    long double aref = 0.75L * static_cast<long double>(a);
    if (aref < 0.1L) aref = 0.1L;
    sig.expect(search::kb_alpha_update(a), aref);
  }
}

// Distance-weighted knowledge sums on open grids with border walls, where the
// shortest path length is the Manhattan distance and the learned weights can
// be replayed exactly in long double.
void check_kbe_raw(std::mt19937_64& gen, SigDigitCheck& sig) {
  engine::GameSpec spec;
  spec.name = "kbe-oracle";
  auto add_class = [&](const std::string& name, char glyph,
                       engine::Category cat) {
    engine::ObjectClass cls;
    cls.type_id = static_cast<int>(spec.classes.size());
    cls.name = name;
    cls.glyph = glyph;
    cls.category = cat;
    cls.behavior = engine::Behavior::Inert;
    spec.classes.push_back(cls);
  };
  add_class("hero", 'A', engine::Category::Avatar);
  add_class("wall", 'W', engine::Category::Wall);
  add_class("gem", 'x', engine::Category::Resource);
  add_class("orb", 'y', engine::Category::Resource);
  add_class("key", 'z', engine::Category::Resource);
  spec.avatar_type = 0;

  for (int trial = 0; trial < 50; trial++) {
    int w = 10 + static_cast<int>(gen() % 5);
    int h = 7 + static_cast<int>(gen() % 4);
    auto cell = [&] {
      return std::pair<int, int>{1 + static_cast<int>(gen() % (w - 2)),
                                 1 + static_cast<int>(gen() % (h - 2))};
    };
    // Distinct interior cells: avatar in the start state, avatar in the end
    // state, then 1-2 objects per resource type.
    std::vector<std::pair<int, int>> used;
    auto fresh_cell = [&] {
      for (;;) {
        auto c = cell();
        if (std::find(used.begin(), used.end(), c) == used.end()) {
          used.push_back(c);
          return c;
        }
      }
    };
    auto av0 = fresh_cell();
    auto avT = fresh_cell();
    std::vector<std::vector<std::pair<int, int>>> objs(5);
    for (int type = 2; type <= 4; type++)
      for (int k = 0; k < 1 + static_cast<int>(gen() % 2); k++)
        objs[type].push_back(fresh_cell());

    auto build_rows = [&](std::pair<int, int> avatar) {
      std::vector<std::string> rows(h, std::string(w, '.'));
      for (int x = 0; x < w; x++) rows[0][x] = rows[h - 1][x] = 'W';
      for (int y = 0; y < h; y++) rows[y][0] = rows[y][w - 1] = 'W';
      for (int type = 2; type <= 4; type++)
        for (auto [x, y] : objs[type])
          rows[y][x] = spec.classes[type].glyph;
      rows[avatar.second][avatar.first] = 'A';
      return rows;
    };
    engine::Level lvl0{w, h, build_rows(av0)};
    engine::Level lvlT{w, h, build_rows(avT)};
    engine::GameState s0 = engine::init_state(spec, lvl0, 1);
    engine::GameState sT = engine::init_state(spec, lvlT, 1);

    // Learned weights, replayed independently in long double.
    search::KnowledgeBase kb;
    kb.init(spec);
    long double ref_weight[5] = {0.0L, 0.0L, 1.0L, 1.0L, 1.0L};
    for (int type = 2; type <= 4; type++) {
      double sign = (gen() % 2) ? 1.0 : -1.0;
      long double delta_sum = 0.0L, alpha = 0.8L;
      int events = static_cast<int>(gen() % 4);
      for (int e = 0; e < events; e++) {
        double delta =
            sign * std::uniform_real_distribution<double>(0.5, 2.0)(gen);
        kb.observe({engine::CollisionEvent{engine::Category::Avatar, type, 0,
                                           0}},
                   delta);
        delta_sum += static_cast<long double>(delta);
        long double mean = delta_sum / (e + 1);
        ref_weight[type] += (mean - ref_weight[type]) * alpha;
        alpha = std::max(0.1L, 0.75L * alpha);
      }
    }

    search::DistanceSnapshot snap = search::distance_snapshot(s0, kb);
    double actual = search::kbe_raw(snap, sT, kb);

    // On an open bordered grid the shortest path is the Manhattan distance.
    auto nearest = [&](std::pair<int, int> from, int type) {
      long double best = 1e18L;
      for (auto [x, y] : objs[type])
        best = std::min(best, static_cast<long double>(
                                  std::abs(x - from.first) +
                                  std::abs(y - from.second)));
      return best;
    };
    long double ref = 0.0L;
    for (int type = 2; type <= 4; type++) {
      if (fabsl(ref_weight[type]) < 1e-4L) continue;
      ref += ref_weight[type] * (nearest(av0, type) - nearest(avT, type));
    }
    sig.expect(actual, ref);
  }
}

void check_decay(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> stat(0.0, 200.0);
  std::uniform_real_distribution<double> gdist(0.0, 1.0);
  for (int trial = 0; trial < 50; trial++) {
    auto root = std::make_unique<search::Node>();
    for (engine::Action a : engine::kAllActions) {
      search::Node& c = root->get_or_add_child(a);
      c.score_sum = stat(gen);
      c.visits = stat(gen);
      c.local_visits = stat(gen);
    }
    search::Node* kept = root->find_child(engine::Action::Up);
    for (engine::Action a :
         {engine::Action::Left, engine::Action::Right, engine::Action::Nil}) {
      search::Node& gc = kept->get_or_add_child(a);
      gc.score_sum = stat(gen);
      gc.visits = stat(gen);
      gc.local_visits = stat(gen);
    }
    struct Orig {
      const search::Node* node;
      double score_sum, visits, local_visits;
    };
    std::vector<Orig> orig;
    orig.push_back({kept, kept->score_sum, kept->visits, kept->local_visits});
    for (const auto& gc : kept->children)
      orig.push_back(
          {gc.get(), gc->score_sum, gc->visits, gc->local_visits});

    double gamma = gdist(gen);
    auto new_root =
        search::reuse_tree(std::move(root), engine::Action::Up, gamma);
    long double g = static_cast<long double>(gamma);
    for (const Orig& o : orig) {
      sig.expect(o.node->score_sum, g * o.score_sum);
      sig.expect(o.node->visits, g * o.visits);
      sig.expect(o.node->local_visits, g * o.local_visits);
    }
  }
}

void check_wald(std::mt19937_64& gen, SigDigitCheck& sig) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; i++) {
    double p = unit(gen);
    double n = 1.0 + static_cast<double>(gen() % 5000);
    long double ref =
        1.96L * sqrtl(static_cast<long double>(p) *
                      (1.0L - static_cast<long double>(p)) /
                      static_cast<long double>(n));
    sig.expect(olm::bench::wald_halfwidth(p, n), ref);
  }
}

CriterionResult formula_exactness() {
  std::mt19937_64 gen(0x5eedf00dULL);
  SigDigitCheck sig;
  check_evaluation(gen, sig);
  check_ucb1(gen, sig);
  check_ph_bias(gen, sig);
  check_mixmax(gen, sig);
  check_kb_updates(gen, sig);
  check_kbe_raw(gen, sig);
  check_decay(gen, sig);
  check_wald(gen, sig);

  CriterionResult r;
  r.name = "formula-exactness";
  r.pass = sig.failed == 0 && sig.checked >= 8 * 50;
  std::ostringstream d;
  d << sig.checked << " randomized inputs across 8 formula families, "
    << sig.failed << " beyond 10 significant digits (worst rel err "
    << static_cast<double>(sig.worst_rel) << ")";
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// Novelty oracle: recompute every novelty mark from the neighborhood
// definition (left siblings + parent + parent's siblings + parent's
// neighborhood) and compare against the incremental marks left in the tree.
// ---------------------------------------------------------------------------

void merge_into(engine::FeatureAtomSet& into,
                const engine::FeatureAtomSet& from) {
  engine::FeatureAtomSet merged;
  std::set_union(into.begin(), into.end(), from.begin(), from.end(),
                 std::back_inserter(merged));
  into = std::move(merged);
}

bool any_new_atom(const engine::FeatureAtomSet& atoms,
                  const engine::FeatureAtomSet& seen) {
  for (uint64_t a : atoms)
    if (!std::binary_search(seen.begin(), seen.end(), a)) return true;
  return false;
}

struct NoveltyAudit {
  long tested = 0;
  long mismatches = 0;
};

// Raw per-test marks. `base` holds the atoms of {parent} + Sib(parent) +
// N(parent), which is the child-independent part of every child's
// neighborhood; left-sibling atoms accumulate inside the loop.
void oracle_raw_marks(const search::Node& parent,
                      const engine::FeatureAtomSet& base,
                      const engine::FeatureAtomSet& parent_atoms,
                      double parent_score, const engine::GameSpec& spec,
                      std::map<const search::Node*, search::NoveltyMark>& raw,
                      NoveltyAudit& audit) {
  if (!parent.group_tested || parent.children.empty()) return;

  engine::FeatureAtomSet neighborhood = base;
  engine::FeatureAtomSet child_base = base;
  for (const auto& child : parent.children) {
    if (!child->has_test_record) {
      audit.mismatches++;  // tested child without a recorded state
      continue;
    }
    bool novel = search::novelty_exempt(child->test_score, parent_score,
                                        child->action, spec) ||
                 any_new_atom(child->test_atoms, neighborhood);
    raw[child.get()] =
        novel ? search::NoveltyMark::Novel : search::NoveltyMark::NotNovel;
    merge_into(neighborhood, child->test_atoms);
    merge_into(child_base, child->test_atoms);
  }
  merge_into(child_base, parent_atoms);
  for (const auto& child : parent.children)
    oracle_raw_marks(*child, child_base, child->test_atoms,
                     child->test_score, spec, raw, audit);
}

// Final marks: a node whose tested children are all not-novel becomes
// not-novel itself (bottom-up), overriding its own test result.
search::NoveltyMark oracle_final_mark(
    const search::Node& node,
    const std::map<const search::Node*, search::NoveltyMark>& raw,
    std::map<const search::Node*, search::NoveltyMark>& final_marks) {
  search::NoveltyMark mine = search::NoveltyMark::Untested;
  if (auto it = raw.find(&node); it != raw.end()) mine = it->second;
  if (node.group_tested && !node.children.empty()) {
    bool all_not_novel = true;
    for (const auto& c : node.children)
      all_not_novel &= oracle_final_mark(*c, raw, final_marks) ==
                       search::NoveltyMark::NotNovel;
    if (all_not_novel) mine = search::NoveltyMark::NotNovel;
  } else {
    for (const auto& c : node.children) oracle_final_mark(*c, raw, final_marks);
  }
  final_marks[&node] = mine;
  return mine;
}

void compare_marks(const search::Node& node,
                   const std::map<const search::Node*, search::NoveltyMark>&
                       final_marks,
                   NoveltyAudit& audit) {
  auto it = final_marks.find(&node);
  search::NoveltyMark expect = it == final_marks.end()
                                   ? search::NoveltyMark::Untested
                                   : it->second;
  if (node.parent != nullptr || expect != search::NoveltyMark::Untested) {
    if (node.mark != search::NoveltyMark::Untested ||
        expect != search::NoveltyMark::Untested)
      audit.tested++;
    if (node.mark != expect) audit.mismatches++;
  }
  for (const auto& c : node.children) compare_marks(*c, final_marks, audit);
}

CriterionResult novelty_oracle() {
  NoveltyAudit audit;
  int searches = 0;
  for (const char* game : {"maze-analog", "keys-doors-analog"}) {
    for (int level = 0; level < 5; level++) {
      for (uint64_t seed = 0; seed < 10; seed++) {
        engine::GameSpec spec;
        engine::GameState s = bundled_state(game, level, spec, 1 + seed);
        search::SearchConfig cfg;
        cfg.budget_kind = search::BudgetKind::Simulations;
        cfg.budget_sims = 400;
        cfg.max_nodes = 200;
        cfg.playout_depth = 3;  // more simulations fit under the node cap
        cfg.novelty = true;
        search::Node root;
        search::SearchContext ctx{cfg, nullptr, nullptr, nullptr};
        Rng rng(seed * 7919 + level);
        search::run_search(s, root, ctx, rng);
        searches++;

        std::map<const search::Node*, search::NoveltyMark> raw, final_marks;
        engine::FeatureAtomSet root_atoms = engine::feature_atoms(s);
        oracle_raw_marks(root, root_atoms, root_atoms, s.score, spec, raw,
                         audit);
        oracle_final_mark(root, raw, final_marks);
        compare_marks(root, final_marks, audit);
      }
    }
  }

  CriterionResult r;
  r.name = "novelty-oracle";
  r.pass = audit.mismatches == 0 && audit.tested > 1000 && searches == 100;
  std::ostringstream d;
  d << searches << " node-capped searches, " << audit.tested
    << " marks recomputed from the neighborhood definition, "
    << audit.mismatches << " mismatches";
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// Pathfinder oracle: A* distances equal plain BFS distances on random grids.
// ---------------------------------------------------------------------------

std::optional<int> bfs_distance(const pathfind::ObstacleGrid& grid,
                                pathfind::Cell from,
                                const std::vector<pathfind::Cell>& targets) {
  std::vector<int> dist(static_cast<size_t>(grid.width) * grid.height, -1);
  std::queue<pathfind::Cell> q;
  dist[from.second * grid.width + from.first] = 0;
  q.push(from);
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop();
    int d = dist[y * grid.width + x];
    const int dx[] = {0, 0, -1, 1}, dy[] = {-1, 1, 0, 0};
    for (int k = 0; k < 4; k++) {
      int nx = x + dx[k], ny = y + dy[k];
      if (nx < 0 || nx >= grid.width || ny < 0 || ny >= grid.height) continue;
      if (grid.at(nx, ny) || dist[ny * grid.width + nx] >= 0) continue;
      dist[ny * grid.width + nx] = d + 1;
      q.push({nx, ny});
    }
  }
  std::optional<int> best;
  for (auto [tx, ty] : targets) {
    int d = dist[ty * grid.width + tx];
    if (d >= 0 && (!best || d < *best)) best = d;
  }
  return best;
}

CriterionResult pathfinder_oracle() {
  std::mt19937_64 gen(0xa57a5ULL);
  int grids = 0, mismatches = 0;
  while (grids < 1000) {
    pathfind::ObstacleGrid grid;
    grid.width = 2 + static_cast<int>(gen() % 29);
    grid.height = 2 + static_cast<int>(gen() % 29);
    grid.blocked.assign(static_cast<size_t>(grid.width) * grid.height, 0);
    std::vector<pathfind::Cell> free;
    for (int y = 0; y < grid.height; y++)
      for (int x = 0; x < grid.width; x++) {
        if (gen() % 100 < 20)
          grid.blocked[y * grid.width + x] = 1;
        else
          free.push_back({x, y});
      }
    if (free.size() < 2) continue;
    grids++;
    pathfind::Cell from = free[gen() % free.size()];
    std::vector<pathfind::Cell> targets;
    for (int k = 0; k < 1 + static_cast<int>(gen() % 3); k++)
      targets.push_back(free[gen() % free.size()]);
    if (pathfind::astar_distance(grid, from, targets) !=
        bfs_distance(grid, from, targets))
      mismatches++;
  }
  CriterionResult r;
  r.name = "pathfinder-oracle";
  r.pass = mismatches == 0;
  r.detail = "1000 random grids vs breadth-first search, " +
             std::to_string(mismatches) + " mismatches";
  return r;
}

// ---------------------------------------------------------------------------
// Toggle isolation & reproducibility: the baseline preset equals the
// all-toggles-off configuration, and fixed seed + fixed simulation count
// reproduce the search bit for bit.
// ---------------------------------------------------------------------------

bool same_result(const search::SearchResult& a,
                 const search::SearchResult& b) {
  if (a.action != b.action || a.simulations != b.simulations ||
      a.fallback != b.fallback ||
      a.child_stats.size() != b.child_stats.size())
    return false;
  for (size_t i = 0; i < a.child_stats.size(); i++) {
    if (a.child_stats[i].action != b.child_stats[i].action) return false;
    if (a.child_stats[i].visits != b.child_stats[i].visits) return false;
    if (a.child_stats[i].average != b.child_stats[i].average) return false;
  }
  return true;
}

CriterionResult toggle_isolation() {
  search::SearchConfig vanilla = olm::agent::preset_config("vanilla").search;
  bool toggles_off = !vanilla.ph && !vanilla.nst && !vanilla.tree_reuse &&
                     !vanilla.bfti && !vanilla.loss_avoidance &&
                     !vanilla.novelty && !vanilla.kbe;

  int pairs = 0, repro_fail = 0, toggle_fail = 0;
  for (int i = 0; i < 100; i++) {
    engine::GameSpec spec;
    engine::GameState s =
        bundled_state(kSuite[i % 8], (i / 8) % 5, spec, 1000 + i);

    auto run_with = [&](const search::SearchConfig& base) {
      search::SearchConfig cfg = base;
      cfg.budget_kind = search::BudgetKind::Simulations;
      cfg.budget_sims = 100;
      search::Node root;
      search::SearchContext ctx{cfg, nullptr, nullptr, nullptr};
      Rng rng(5000 + i);
      return search::run_search(s, root, ctx, rng);
    };

    search::SearchResult a1 = run_with(vanilla);
    search::SearchResult a2 = run_with(vanilla);
    search::SearchResult b = run_with(search::SearchConfig{});
    pairs++;
    if (!same_result(a1, a2)) repro_fail++;
    if (!same_result(a1, b)) toggle_fail++;
  }

  CriterionResult r;
  r.name = "toggle-isolation-reproducibility";
  r.pass = toggles_off && repro_fail == 0 && toggle_fail == 0 && pairs == 100;
  std::ostringstream d;
  d << pairs << " paired seeded runs: " << repro_fail
    << " reproducibility failures, " << toggle_fail
    << " baseline-vs-toggles-off differences";
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// Determinism detection: all bundled games classify correctly, and the
// NPC-free stochastic test game is caught by replay divergence.
// ---------------------------------------------------------------------------

CriterionResult determinism_detection() {
  search::ProbeConfig probe;
  int suite_correct = 0;
  for (int i = 0; i < 100; i++) {
    std::string game = kSuite[i % 8];
    engine::GameSpec spec;
    engine::GameState s = bundled_state(game, (i / 8) % 5, spec, 3 + i);
    Rng rng(17 + i);
    search::DeterminismVerdict v = search::classify(s, probe, rng);
    bool expect_det = game == "maze-analog" || game == "keys-doors-analog";
    if (v.deterministic == expect_det) suite_correct++;
  }

  int divergence_caught = 0;
  for (uint64_t seed = 0; seed < 100; seed++) {
    engine::GameSpec spec;
    engine::GameState s = bundled_state("teleport-test", 0, spec, seed);
    Rng rng(seed);
    search::DeterminismVerdict v = search::classify(s, probe, rng);
    if (!v.deterministic) divergence_caught++;
  }

  CriterionResult r;
  r.name = "determinism-detection";
  r.pass = suite_correct == 100 && divergence_caught >= 95;
  std::ostringstream d;
  d << suite_correct
    << "/100 bundled-suite classifications correct; stochastic NPC-free game "
       "caught "
    << divergence_caught << "/100";
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// Budget compliance: at a 40 ms wall-clock budget the 99th-percentile
// decision latency stays within the budget plus one simulation duration.
// ---------------------------------------------------------------------------

CriterionResult budget_compliance() {
  std::vector<double> slack_ms;
  for (const char* game : kSuite) {
    engine::GameSpec spec;
    engine::GameState s = bundled_state(game, 0, spec, 99);
    olm::agent::AgentConfig ac = olm::agent::preset_config("all");
    ac.search.budget_kind = search::BudgetKind::WallClockMs;
    ac.search.budget_ms = 40.0;
    ac.search.startup_budget_ms = 40.0;
    olm::agent::Agent agent(ac, 99);
    Rng game_rng(olm::fnv1a("game-rng", 99));
    agent.on_game_start(s);
    for (int tick = 0; tick < 150 && s.ongoing(); tick++)
      engine::advance(s, agent.act(s), game_rng);
    for (const olm::agent::TickStats& t : agent.tick_stats())
      slack_ms.push_back((t.decision_seconds - t.max_sim_seconds) * 1000.0);
  }

  std::sort(slack_ms.begin(), slack_ms.end());
  size_t n = slack_ms.size();
  double p99 = n ? slack_ms[std::min(n - 1, static_cast<size_t>(
                                                std::ceil(0.99 * n) - 1))]
                 : 1e9;
  size_t over = 0;
  for (double v : slack_ms) over += v > 40.0;

  CriterionResult r;
  r.name = "budget-compliance";
  r.pass = n >= 100 && p99 <= 40.0;
  std::ostringstream d;
  d << n << " ticks at a 40 ms budget: p99 latency minus one simulation = "
    << fmt(p99) << " ms; " << over << " ticks over budget";
  r.detail = d.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_fast_criteria() {
  return {formula_exactness(),     novelty_oracle(),
          pathfinder_oracle(),     toggle_isolation(),
          determinism_detection(), budget_compliance()};
}

}  // namespace accept
