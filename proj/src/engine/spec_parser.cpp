#include "olmcts/engine/spec_parser.hpp"

#include <fstream>
#include <sstream>

namespace olm::engine {

namespace {

struct Tokenizer {
  std::string line;
  int line_no;
  size_t pos = 0;

  // Returns the next whitespace-delimited token, empty when exhausted.
  std::string next(int* col = nullptr) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) pos++;
    if (col) *col = static_cast<int>(pos) + 1;
    size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') pos++;
    return line.substr(start, pos - start);
  }
};

Category parse_category(const std::string& s, int line, int col) {
  if (s == "avatar") return Category::Avatar;
  if (s == "avatar-spawned") return Category::AvatarSpawned;
  if (s == "npc") return Category::Npc;
  if (s == "movable") return Category::Movable;
  if (s == "resource") return Category::Resource;
  if (s == "portal") return Category::Portal;
  if (s == "wall") return Category::Wall;
  if (s == "static") return Category::Static;
  throw SpecParseError(line, col, "unknown category '" + s + "'");
}

Behavior parse_behavior(const std::string& s, int line, int col) {
  if (s == "inert") return Behavior::Inert;
  if (s == "constant") return Behavior::ConstantVelocity;
  if (s == "random-walk") return Behavior::RandomWalk;
  if (s == "chaser") return Behavior::Chaser;
  if (s == "fleeing") return Behavior::Fleeing;
  throw SpecParseError(line, col, "unknown behavior '" + s + "'");
}

int require_type(const GameSpec& spec, const std::string& name, int line,
                 int col) {
  const ObjectClass* c = spec.class_by_name(name);
  if (!c) throw SpecParseError(line, col, "undeclared type '" + name + "'");
  return c->type_id;
}

std::string strip_comment(const std::string& raw) {
  size_t semi = raw.find(';');
  std::string s = semi == std::string::npos ? raw : raw.substr(0, semi);
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  return s;
}

}  // namespace

GameSpec load_spec(const std::string& text) {
  GameSpec spec;
  enum class Section { None, Classes, Rules, Traits } section = Section::None;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_timeout_rule = false;

  // Rules reference class names; velocity tokens and open-with targets are
  // resolved after the classes section, so rules must come after classes.
  while (std::getline(in, raw)) {
    line_no++;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    Tokenizer tok{line, line_no};
    int col;
    std::string head = tok.next(&col);

    if (head == "name:") {
      spec.name = tok.next();
      if (spec.name.empty())
        throw SpecParseError(line_no, col, "missing game name");
      continue;
    }
    if (head == "classes:") { section = Section::Classes; continue; }
    if (head == "rules:") { section = Section::Rules; continue; }
    if (head == "traits:") { section = Section::Traits; continue; }

    switch (section) {
      case Section::None:
        throw SpecParseError(line_no, col, "content before any section");
      case Section::Classes: {
        ObjectClass cls;
        cls.type_id = static_cast<int>(spec.classes.size());
        cls.name = head;
        if (spec.class_by_name(cls.name))
          throw SpecParseError(line_no, col, "duplicate class '" + cls.name + "'");
        std::string glyph = tok.next(&col);
        if (glyph.size() != 1)
          throw SpecParseError(line_no, col, "glyph must be one character");
        cls.glyph = glyph[0];
        if (spec.class_by_glyph(cls.glyph))
          throw SpecParseError(line_no, col, "duplicate glyph");
        cls.category = parse_category(tok.next(&col), line_no, col);
        cls.behavior = parse_behavior(tok.next(&col), line_no, col);
        if (cls.category == Category::Wall && cls.behavior != Behavior::Inert)
          throw SpecParseError(line_no, col, "walls must be inert");
        for (std::string extra = tok.next(&col); !extra.empty();
             extra = tok.next(&col)) {
          if (extra.rfind("vel=", 0) == 0) {
            if (std::sscanf(extra.c_str(), "vel=%d,%d", &cls.vx, &cls.vy) != 2)
              throw SpecParseError(line_no, col, "bad velocity '" + extra + "'");
          } else {
            throw SpecParseError(line_no, col, "unknown attribute '" + extra + "'");
          }
        }
        spec.classes.push_back(cls);
        break;
      }
      case Section::Rules: {
        if (head == "collide") {
          CollisionRule rule;
          rule.actor_type = require_type(spec, tok.next(&col), line_no, col);
          rule.other_type = require_type(spec, tok.next(&col), line_no, col);
          for (std::string e = tok.next(&col); !e.empty(); e = tok.next(&col)) {
            Effect eff{};
            if (e == "kill-self") eff.kind = EffectKind::KillSelf;
            else if (e == "kill-other") eff.kind = EffectKind::KillOther;
            else if (e == "kill-both") eff.kind = EffectKind::KillBoth;
            else if (e == "win") eff.kind = EffectKind::Win;
            else if (e == "lose") eff.kind = EffectKind::Lose;
            else if (e == "block") eff.kind = EffectKind::Block;
            else if (e == "teleport") eff.kind = EffectKind::Teleport;
            else if (e.rfind("score=", 0) == 0) {
              eff.kind = EffectKind::ScoreDelta;
              eff.value = std::stod(e.substr(6));
            } else if (e.rfind("open-with=", 0) == 0) {
              eff.kind = EffectKind::OpenWith;
              eff.resource_type =
                  require_type(spec, e.substr(10), line_no, col);
            } else {
              throw SpecParseError(line_no, col, "unknown effect '" + e + "'");
            }
            rule.effects.push_back(eff);
          }
          if (rule.effects.empty())
            throw SpecParseError(line_no, col, "collision rule with no effect");
          spec.collision_rules.push_back(rule);
        } else if (head == "timeout") {
          std::string outcome = tok.next(&col);
          if (outcome != "win" && outcome != "lose")
            throw SpecParseError(line_no, col, "timeout outcome must be win or lose");
          spec.termination_rules.push_back(
              {TerminationRule::Kind::Timeout, -1, outcome == "win"});
          saw_timeout_rule = true;
        } else if (head == "all-gone") {
          int type = require_type(spec, tok.next(&col), line_no, col);
          std::string outcome = tok.next(&col);
          if (outcome != "win" && outcome != "lose")
            throw SpecParseError(line_no, col, "all-gone outcome must be win or lose");
          spec.termination_rules.push_back(
              {TerminationRule::Kind::AllGone, type, outcome == "win"});
        } else {
          throw SpecParseError(line_no, col, "unknown rule '" + head + "'");
        }
        break;
      }
      case Section::Traits: {
        if (head == "avatar-speed") {
          std::string v = tok.next(&col);
          spec.speed_den = 1;
          if (std::sscanf(v.c_str(), "%d/%d", &spec.speed_num,
                          &spec.speed_den) < 1)
            throw SpecParseError(line_no, col, "bad avatar-speed '" + v + "'");
          if (spec.speed_num <= 0 || spec.speed_den <= 0)
            throw SpecParseError(line_no, col, "avatar-speed must be positive");
        } else if (head == "movement-axes") {
          std::string v = tok.next(&col);
          if (v == "both") spec.axes = MovementAxes::Both;
          else if (v == "horizontal") spec.axes = MovementAxes::HorizontalOnly;
          else if (v == "vertical") spec.axes = MovementAxes::VerticalOnly;
          else throw SpecParseError(line_no, col, "bad movement-axes '" + v + "'");
        } else if (head == "tick-cap") {
          spec.tick_cap = std::stoi(tok.next(&col));
          if (spec.tick_cap < 1)
            throw SpecParseError(line_no, col, "tick-cap must be >= 1");
        } else if (head == "missile-dir") {
          std::string v = tok.next(&col);
          if (v == "orient") spec.spawn_dir = SpawnDir::Orientation;
          else if (v == "up") spec.spawn_dir = SpawnDir::Up;
          else throw SpecParseError(line_no, col, "bad missile-dir '" + v + "'");
        } else {
          throw SpecParseError(line_no, col, "unknown trait '" + head + "'");
        }
        break;
      }
    }
  }

  int avatars = 0;
  for (const auto& c : spec.classes) {
    if (c.category == Category::Avatar) {
      avatars++;
      spec.avatar_type = c.type_id;
    }
    if (c.category == Category::AvatarSpawned) spec.spawn_type = c.type_id;
  }
  if (avatars != 1)
    throw SpecParseError(line_no, 1,
                         avatars == 0 ? "no avatar class declared"
                                      : "multiple avatar classes declared");
  if (!saw_timeout_rule)
    spec.termination_rules.push_back(
        {TerminationRule::Kind::Timeout, -1, false});
  return spec;
}

Level load_level(const std::string& text, const GameSpec& spec) {
  Level level;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_avatar = false;
  while (std::getline(in, raw)) {
    line_no++;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    for (size_t x = 0; x < raw.size(); x++) {
      char g = raw[x];
      if (g == '.') continue;
      const ObjectClass* c = spec.class_by_glyph(g);
      if (!c)
        throw SpecParseError(line_no, static_cast<int>(x) + 1,
                             std::string("unknown glyph '") + g + "'");
      if (c->category == Category::Avatar) saw_avatar = true;
    }
    if (level.width == 0) level.width = static_cast<int>(raw.size());
    if (static_cast<int>(raw.size()) != level.width)
      throw SpecParseError(line_no, 1, "level rows have unequal width");
    level.rows.push_back(raw);
  }
  level.height = static_cast<int>(level.rows.size());
  if (level.height == 0) throw SpecParseError(1, 1, "empty level");
  if (!saw_avatar) throw SpecParseError(line_no, 1, "missing avatar in level");
  return level;
}

namespace {
std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

GameSpec load_spec_file(const std::string& path) {
  return load_spec(read_file(path));
}

Level load_level_file(const std::string& path, const GameSpec& spec) {
  return load_level(read_file(path), spec);
}

}  // namespace olm::engine
