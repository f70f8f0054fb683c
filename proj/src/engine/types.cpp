#include "olmcts/engine/types.hpp"

namespace olm::engine {

const char* action_name(Action a) {
  switch (a) {
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::Use: return "use";
    case Action::Nil: return "nil";
  }
  return "?";
}

std::optional<Action> action_from_name(std::string_view name) {
  for (Action a : kAllActions) {
    if (name == action_name(a)) return a;
  }
  return std::nullopt;
}

const ObjectClass* GameSpec::class_by_glyph(char g) const {
  for (const auto& c : classes) {
    if (c.glyph == g) return &c;
  }
  return nullptr;
}

const ObjectClass* GameSpec::class_by_name(std::string_view n) const {
  for (const auto& c : classes) {
    if (c.name == n) return &c;
  }
  return nullptr;
}

bool GameSpec::has_npc_class() const {
  for (const auto& c : classes) {
    if (c.category == Category::Npc) return true;
  }
  return false;
}

}  // namespace olm::engine
