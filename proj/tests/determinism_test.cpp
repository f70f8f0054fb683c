#include <map>
#include <string>

#include "doctest.h"
#include "olmcts/engine/spec_parser.hpp"
#include "olmcts/engine/state.hpp"
#include "olmcts/search/determinism.hpp"

using namespace olm;
using namespace olm::search;

namespace {

engine::GameState bundled(const std::string& game, int level = 0) {
  static std::map<std::string, engine::GameSpec> specs;
  if (!specs.count(game))
    specs[game] = engine::load_spec_file(GAMES_DIR "/" + game + ".game");
  engine::Level lvl = engine::load_level_file(
      GAMES_DIR "/" + game + "_" + std::to_string(level) + ".level",
      specs[game]);
  return engine::init_state(specs[game], lvl, 1);
}

}  // namespace

TEST_CASE("NPC-bearing games are called nondeterministic immediately") {
  ProbeConfig probe;
  for (const char* g : {"frogs-analog", "butterflies-analog", "chase-analog",
                        "shooter-analog", "camelrace-analog",
                        "slowcross-analog"}) {
    CAPTURE(g);
    Rng rng(1);
    DeterminismVerdict v = classify(bundled(g), probe, rng);
    CHECK_FALSE(v.deterministic);
    CHECK(v.reason == VerdictReason::NpcObserved);
  }
}

TEST_CASE("NPC-free still games probe as deterministic") {
  ProbeConfig probe;
  for (const char* g : {"maze-analog", "keys-doors-analog"}) {
    CAPTURE(g);
    for (uint64_t seed = 0; seed < 20; seed++) {
      Rng rng(seed);
      DeterminismVerdict v = classify(bundled(g), probe, rng);
      CHECK(v.deterministic);
      CHECK(v.reason == VerdictReason::AllProbesAgree);
    }
  }
}

TEST_CASE("NPC-free stochastic effects are caught by replay divergence") {
  ProbeConfig probe;
  int caught = 0;
  for (uint64_t seed = 0; seed < 20; seed++) {
    Rng rng(seed);
    DeterminismVerdict v = classify(bundled("teleport-test"), probe, rng);
    if (!v.deterministic) {
      CHECK(v.reason == VerdictReason::Divergence);
      caught++;
    }
  }
  CHECK(caught >= 19);
}

TEST_CASE("the deterministic mode rewires the search configuration") {
  SearchConfig cfg;
  cfg.gamma = 0.6;
  DeterminismVerdict det{true, VerdictReason::AllProbesAgree};
  apply_mode(det, cfg);
  CHECK(cfg.gamma == doctest::Approx(1.0));
  CHECK(cfg.mixmax);
  CHECK(cfg.disable_first_ply_reset);

  SearchConfig cfg2;
  cfg2.gamma = 0.6;
  DeterminismVerdict nondet{false, VerdictReason::NpcObserved};
  apply_mode(nondet, cfg2);
  CHECK(cfg2.gamma == doctest::Approx(0.6));
  CHECK_FALSE(cfg2.mixmax);
  CHECK_FALSE(cfg2.disable_first_ply_reset);
}
