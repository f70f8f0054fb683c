#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace olm::engine {

enum class Action : uint8_t { Up = 0, Down, Left, Right, Use, Nil };

constexpr std::array<Action, 6> kAllActions = {Action::Up,   Action::Down,
                                               Action::Left, Action::Right,
                                               Action::Use,  Action::Nil};

inline bool is_movement(Action a) {
  return a == Action::Up || a == Action::Down || a == Action::Left ||
         a == Action::Right;
}

const char* action_name(Action a);
std::optional<Action> action_from_name(std::string_view name);

enum class Category : uint8_t {
  Avatar,
  AvatarSpawned,
  Npc,
  Movable,
  Resource,
  Portal,
  Wall,
  Static
};

enum class Behavior : uint8_t {
  Inert,
  ConstantVelocity,
  RandomWalk,
  Chaser,
  Fleeing
};

enum class MovementAxes : uint8_t { Both, HorizontalOnly, VerticalOnly };

enum class EffectKind : uint8_t {
  KillSelf,
  KillOther,
  KillBoth,
  ScoreDelta,
  Win,
  Lose,
  Block,
  Teleport,
  OpenWith  // consume one held unit of a resource to remove the other object
};

struct Effect {
  EffectKind kind;
  double value = 0.0;     // ScoreDelta amount
  int resource_type = -1; // OpenWith resource type-id
};

struct CollisionRule {
  int actor_type;
  int other_type;
  std::vector<Effect> effects;  // applied in declaration order
};

struct TerminationRule {
  enum class Kind : uint8_t { Timeout, AllGone };
  Kind kind;
  int type_id = -1;  // AllGone target
  bool win;
};

struct ObjectClass {
  int type_id;
  std::string name;
  char glyph;
  Category category;
  Behavior behavior;
  int vx = 0, vy = 0;  // ConstantVelocity cells per tick
};

// Missile spawn direction for the `use` action.
enum class SpawnDir : uint8_t { Orientation, Up };

struct GameSpec {
  std::string name;
  std::vector<ObjectClass> classes;           // type_id == index
  std::vector<CollisionRule> collision_rules; // declaration order
  std::vector<TerminationRule> termination_rules;
  int speed_num = 1, speed_den = 1;  // avatar cells per tick as a rational
  MovementAxes axes = MovementAxes::Both;
  int tick_cap = 2000;
  int avatar_type = -1;
  int spawn_type = -1;  // avatar-spawned class, -1 if none
  SpawnDir spawn_dir = SpawnDir::Orientation;

  const ObjectClass* class_by_glyph(char g) const;
  const ObjectClass* class_by_name(std::string_view n) const;
  bool has_npc_class() const;
};

struct Level {
  int width = 0, height = 0;
  std::vector<std::string> rows;  // rows[y][x], '.' means empty
};

struct ParseError {
  int line;
  int column;
  std::string message;
};

}  // namespace olm::engine
