#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olmcts/engine/types.hpp"
#include "olmcts/rng.hpp"

namespace olm::engine {

enum class Status : uint8_t { Ongoing, Win, Loss };

struct CollisionEvent {
  Category actor_category;  // Avatar or AvatarSpawned
  int other_type;
  int x, y;
};

struct ObjInst {
  int16_t type;
  int16_t x, y;
  int8_t vx = 0, vy = 0;
  bool alive = true;
};

// Feature atoms are encoded as 64-bit keys:
//   at(cell, type), orient(dir), holding(resource, count)
using FeatureAtom = uint64_t;
using FeatureAtomSet = std::vector<FeatureAtom>;  // sorted, unique

// Full observable snapshot of one game at one tick. Copyable by value; the
// spec pointer is shared and immutable. The RNG is deliberately not part of
// the state: repeated advances of copies of a nondeterministic state diverge.
struct GameState {
  const GameSpec* spec = nullptr;
  int width = 0, height = 0;
  int tick = 0;
  double score = 0.0;
  Status status = Status::Ongoing;
  std::vector<ObjInst> objects;  // creation order, index is the object id
  int avatar_id = -1;
  Action orientation = Action::Down;
  int sub_accum = 0;  // sub-cell accumulator numerator (denominator in spec)
  std::vector<int16_t> held;  // per type-id resource counts
  std::vector<CollisionEvent> last_events;

  // Derived indexes, maintained by init/advance. Walls are immortal, so the
  // mask is built once. by_type holds object ids per type-id.
  std::vector<uint8_t> wall_mask;
  std::vector<std::vector<int32_t>> by_type;

  bool wall_at(int x, int y) const { return wall_mask[y * width + x] != 0; }

  bool ongoing() const { return status == Status::Ongoing; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  const ObjInst& avatar() const { return objects[avatar_id]; }
  bool avatar_alive() const {
    return avatar_id >= 0 && objects[avatar_id].alive;
  }
};

struct StepOutcome {
  double score_delta = 0.0;
  Status new_status = Status::Ongoing;
  // Events of this advance also live in state.last_events.
};

struct EngineError {
  std::string message;
};

GameState init_state(const GameSpec& spec, const Level& level, uint64_t seed);

// Advances `state` in place by one tick. Throws std::logic_error on a
// terminal state or an action that is not legal.
StepOutcome advance(GameState& state, Action action, Rng& rng);

std::vector<Action> legal_actions(const GameState& state);

FeatureAtomSet feature_atoms(const GameState& state);

// Canonical byte serialization (sorted object list); used only for equality
// testing and the determinism probe.
std::string serialize(const GameState& state);

FeatureAtom atom_at(int x, int y, int type, int width);
FeatureAtom atom_orient(Action dir);
FeatureAtom atom_holding(int type, int count);

}  // namespace olm::engine
