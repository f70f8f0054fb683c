#include "olmcts/engine/state.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <tuple>

namespace olm::engine {

namespace {

void step_delta(Action a, int& dx, int& dy) {
  dx = dy = 0;
  switch (a) {
    case Action::Up: dy = -1; break;
    case Action::Down: dy = 1; break;
    case Action::Left: dx = -1; break;
    case Action::Right: dx = 1; break;
    default: break;
  }
}

void emit_event(GameState& s, Category actor_cat, int other_type, int x,
                int y) {
  s.last_events.push_back({actor_cat, other_type, x, y});
}

void set_status(GameState& s, bool win) {
  if (s.status == Status::Ongoing)
    s.status = win ? Status::Win : Status::Loss;
}

void teleport(GameState& s, ObjInst& obj, Rng& rng) {
  // Uniform over non-wall cells.
  int free_count = 0;
  for (uint8_t w : s.wall_mask)
    if (!w) free_count++;
  if (free_count == 0) return;
  int pick = static_cast<int>(rng.uniform(static_cast<uint32_t>(free_count)));
  for (int y = 0; y < s.height; y++) {
    for (int x = 0; x < s.width; x++) {
      if (s.wall_at(x, y)) continue;
      if (pick-- == 0) {
        obj.x = static_cast<int16_t>(x);
        obj.y = static_cast<int16_t>(y);
        return;
      }
    }
  }
}

void apply_pair_effects(GameState& s, const CollisionRule& rule, int ai,
                        int bi, Rng& rng) {
  ObjInst& a = s.objects[ai];
  ObjInst& b = s.objects[bi];
  Category acat = s.spec->classes[a.type].category;
  Category bcat = s.spec->classes[b.type].category;
  if (acat == Category::Avatar || acat == Category::AvatarSpawned)
    emit_event(s, acat, b.type, a.x, a.y);
  else if (bcat == Category::Avatar || bcat == Category::AvatarSpawned)
    emit_event(s, bcat, a.type, b.x, b.y);

  for (const Effect& e : rule.effects) {
    switch (e.kind) {
      case EffectKind::KillSelf:
        a.alive = false;
        break;
      case EffectKind::KillOther:
        if (b.alive && bcat == Category::Resource && acat == Category::Avatar)
          s.held[b.type]++;
        b.alive = false;
        break;
      case EffectKind::KillBoth:
        if (b.alive && bcat == Category::Resource && acat == Category::Avatar)
          s.held[b.type]++;
        a.alive = false;
        b.alive = false;
        break;
      case EffectKind::ScoreDelta:
        s.score += e.value;
        break;
      case EffectKind::Win:
        set_status(s, true);
        break;
      case EffectKind::Lose:
        set_status(s, false);
        break;
      case EffectKind::Block:
        break;  // movement-time semantics only
      case EffectKind::Teleport:
        teleport(s, a, rng);
        break;
      case EffectKind::OpenWith:
        if (e.resource_type >= 0 && s.held[e.resource_type] > 0 && b.alive) {
          s.held[e.resource_type]--;
          b.alive = false;
        }
        break;
    }
  }
}

// Attempts to move the avatar one step; resolves block / open-with rules
// against the occupants of the target cell, in rule-declaration order.
void try_move_avatar(GameState& s, int dx, int dy, Rng& rng) {
  ObjInst& av = s.objects[s.avatar_id];
  int nx = av.x + dx, ny = av.y + dy;
  if (!s.in_bounds(nx, ny)) return;
  if (s.wall_at(nx, ny)) return;  // walls block by category

  bool blocked = false;
  for (const CollisionRule& rule : s.spec->collision_rules) {
    if (rule.actor_type != av.type) continue;
    bool has_block = false, has_open = false;
    int open_resource = -1;
    for (const Effect& e : rule.effects) {
      if (e.kind == EffectKind::Block) has_block = true;
      if (e.kind == EffectKind::OpenWith) {
        has_open = true;
        open_resource = e.resource_type;
      }
    }
    if (!has_block && !has_open) continue;
    for (int32_t oi : s.by_type[rule.other_type]) {
      ObjInst& occ = s.objects[oi];
      if (!occ.alive || occ.x != nx || occ.y != ny) continue;
      if (has_open) {
        if (s.held[open_resource] > 0) {
          s.held[open_resource]--;
          occ.alive = false;
          emit_event(s, Category::Avatar, occ.type, nx, ny);
          for (const Effect& e : rule.effects) {
            if (e.kind == EffectKind::ScoreDelta) s.score += e.value;
            if (e.kind == EffectKind::Win) set_status(s, true);
            if (e.kind == EffectKind::Lose) set_status(s, false);
            if (e.kind == EffectKind::Teleport) teleport(s, av, rng);
          }
        } else {
          blocked = true;
        }
      } else {
        blocked = true;
      }
      if (blocked) break;
    }
    if (blocked) break;
  }
  if (!blocked) {
    av.x = static_cast<int16_t>(nx);
    av.y = static_cast<int16_t>(ny);
  }
}

void move_npc(GameState& s, ObjInst& obj, Rng& rng) {
  const ObjectClass& cls = s.spec->classes[obj.type];
  switch (cls.behavior) {
    case Behavior::Inert:
      break;
    case Behavior::ConstantVelocity: {
      int nx = obj.x + obj.vx, ny = obj.y + obj.vy;
      if (cls.category == Category::AvatarSpawned) {
        // Missiles die at the edge or against a wall.
        if (!s.in_bounds(nx, ny) || s.wall_at(nx, ny)) {
          obj.alive = false;
        } else {
          obj.x = static_cast<int16_t>(nx);
          obj.y = static_cast<int16_t>(ny);
        }
        break;
      }
      // Other constant movers wrap at the edges and reverse against walls.
      nx = (nx + s.width) % s.width;
      ny = (ny + s.height) % s.height;
      if (s.wall_at(nx, ny)) {
        obj.vx = static_cast<int8_t>(-obj.vx);
        obj.vy = static_cast<int8_t>(-obj.vy);
        nx = (obj.x + obj.vx + s.width) % s.width;
        ny = (obj.y + obj.vy + s.height) % s.height;
        if (s.wall_at(nx, ny)) break;  // boxed in
      }
      obj.x = static_cast<int16_t>(nx);
      obj.y = static_cast<int16_t>(ny);
      break;
    }
    case Behavior::RandomWalk: {
      uint32_t d = rng.uniform(5);  // 4 = stay
      if (d >= 4) break;
      int dx, dy;
      step_delta(static_cast<Action>(d), dx, dy);
      int nx = obj.x + dx, ny = obj.y + dy;
      if (s.in_bounds(nx, ny) && !s.wall_at(nx, ny)) {
        obj.x = static_cast<int16_t>(nx);
        obj.y = static_cast<int16_t>(ny);
      }
      break;
    }
    case Behavior::Chaser:
    case Behavior::Fleeing: {
      if (!s.avatar_alive()) break;
      const ObjInst& av = s.avatar();
      struct Cand { int x, y, dist; };
      Cand cands[5];
      int n = 0;
      cands[n++] = {obj.x, obj.y,
                    std::abs(obj.x - av.x) + std::abs(obj.y - av.y)};
      for (int d = 0; d < 4; d++) {
        int dx, dy;
        step_delta(static_cast<Action>(d), dx, dy);
        int nx = obj.x + dx, ny = obj.y + dy;
        if (s.in_bounds(nx, ny) && !s.wall_at(nx, ny))
          cands[n++] = {nx, ny, std::abs(nx - av.x) + std::abs(ny - av.y)};
      }
      bool chase = cls.behavior == Behavior::Chaser;
      int best = cands[0].dist;
      for (int i = 1; i < n; i++)
        best = chase ? std::min(best, cands[i].dist)
                     : std::max(best, cands[i].dist);
      int ties[5], t = 0;
      for (int i = 0; i < n; i++)
        if (cands[i].dist == best) ties[t++] = i;
      const Cand& pick = cands[ties[rng.uniform(static_cast<uint32_t>(t))]];
      obj.x = static_cast<int16_t>(pick.x);
      obj.y = static_cast<int16_t>(pick.y);
      break;
    }
  }
}

}  // namespace

GameState init_state(const GameSpec& spec, const Level& level,
                     uint64_t /*seed*/) {
  GameState s;
  s.spec = &spec;
  s.width = level.width;
  s.height = level.height;
  s.held.assign(spec.classes.size(), 0);
  s.wall_mask.assign(static_cast<size_t>(level.width) * level.height, 0);
  s.by_type.assign(spec.classes.size(), {});
  for (int y = 0; y < level.height; y++) {
    for (int x = 0; x < level.width; x++) {
      char g = level.rows[y][x];
      if (g == '.') continue;
      const ObjectClass* c = spec.class_by_glyph(g);
      if (!c) throw std::logic_error("unknown glyph in level");
      ObjInst o;
      o.type = static_cast<int16_t>(c->type_id);
      o.x = static_cast<int16_t>(x);
      o.y = static_cast<int16_t>(y);
      o.vx = static_cast<int8_t>(c->vx);
      o.vy = static_cast<int8_t>(c->vy);
      if (c->category == Category::Avatar)
        s.avatar_id = static_cast<int>(s.objects.size());
      if (c->category == Category::Wall) s.wall_mask[y * level.width + x] = 1;
      s.by_type[c->type_id].push_back(static_cast<int32_t>(s.objects.size()));
      s.objects.push_back(o);
    }
  }
  if (s.avatar_id < 0) throw std::logic_error("missing avatar in level");
  return s;
}

std::vector<Action> legal_actions(const GameState& state) {
  std::vector<Action> out;
  if (!state.ongoing()) return out;
  const MovementAxes axes = state.spec->axes;
  if (axes != MovementAxes::HorizontalOnly) {
    out.push_back(Action::Up);
    out.push_back(Action::Down);
  }
  if (axes != MovementAxes::VerticalOnly) {
    out.push_back(Action::Left);
    out.push_back(Action::Right);
  }
  out.push_back(Action::Use);
  out.push_back(Action::Nil);
  return out;
}

StepOutcome advance(GameState& state, Action action, Rng& rng) {
  if (!state.ongoing())
    throw std::logic_error("advance called on a terminal state");
  {
    auto legal = legal_actions(state);
    if (std::find(legal.begin(), legal.end(), action) == legal.end())
      throw std::logic_error("illegal action");
  }
  state.last_events.clear();
  const double score_before = state.score;
  const GameSpec& spec = *state.spec;

  // 1. Avatar.
  if (state.avatar_alive()) {
    if (is_movement(action)) {
      state.orientation = action;
      state.sub_accum += spec.speed_num;
      while (state.sub_accum >= spec.speed_den) {
        state.sub_accum -= spec.speed_den;
        int dx, dy;
        step_delta(action, dx, dy);
        try_move_avatar(state, dx, dy, rng);
      }
    } else if (action == Action::Use && spec.spawn_type >= 0) {
      const ObjInst& av = state.avatar();
      Action dir =
          spec.spawn_dir == SpawnDir::Up ? Action::Up : state.orientation;
      int dx, dy;
      step_delta(dir, dx, dy);
      ObjInst m;
      m.type = static_cast<int16_t>(spec.spawn_type);
      m.x = av.x;
      m.y = av.y;
      m.vx = static_cast<int8_t>(dx);
      m.vy = static_cast<int8_t>(dy);
      state.by_type[spec.spawn_type].push_back(
          static_cast<int32_t>(state.objects.size()));
      state.objects.push_back(m);
    }
  }

  // 2. Other objects, in creation order. Objects spawned this tick move too.
  for (size_t i = 0; i < state.objects.size(); i++) {
    if (static_cast<int>(i) == state.avatar_id) continue;
    if (!state.objects[i].alive) continue;
    move_npc(state, state.objects[i], rng);
  }

  // 3. Collision rules in declaration order.
  for (const CollisionRule& rule : spec.collision_rules) {
    for (int32_t ai : state.by_type[rule.actor_type]) {
      if (!state.objects[ai].alive) continue;
      for (int32_t bi : state.by_type[rule.other_type]) {
        if (ai == bi) continue;
        const ObjInst& a = state.objects[ai];
        const ObjInst& b = state.objects[bi];
        if (!b.alive || a.x != b.x || a.y != b.y) continue;
        apply_pair_effects(state, rule, ai, bi, rng);
        if (!state.objects[ai].alive) break;
      }
    }
  }

  // 4. Tick and termination.
  state.tick++;
  if (state.status == Status::Ongoing && !state.avatar_alive())
    state.status = Status::Loss;
  for (const TerminationRule& tr : spec.termination_rules) {
    if (state.status != Status::Ongoing) break;
    if (tr.kind == TerminationRule::Kind::AllGone) {
      bool any = false;
      for (int32_t oi : state.by_type[tr.type_id])
        if (state.objects[oi].alive) { any = true; break; }
      if (!any) set_status(state, tr.win);
    }
  }
  if (state.status == Status::Ongoing && state.tick >= spec.tick_cap) {
    bool timeout_win = false;
    for (const TerminationRule& tr : spec.termination_rules)
      if (tr.kind == TerminationRule::Kind::Timeout) timeout_win = tr.win;
    set_status(state, timeout_win);
  }

  StepOutcome out;
  out.score_delta = state.score - score_before;
  out.new_status = state.status;
  return out;
}

FeatureAtom atom_at(int x, int y, int type, int width) {
  return (uint64_t{0} << 62) | (static_cast<uint64_t>(type) << 32) |
         static_cast<uint64_t>(y * width + x);
}

FeatureAtom atom_orient(Action dir) {
  return (uint64_t{1} << 62) | static_cast<uint64_t>(dir);
}

FeatureAtom atom_holding(int type, int count) {
  return (uint64_t{2} << 62) | (static_cast<uint64_t>(type) << 32) |
         static_cast<uint64_t>(count);
}

FeatureAtomSet feature_atoms(const GameState& state) {
  FeatureAtomSet atoms;
  atoms.reserve(state.objects.size() + 4);
  for (const auto& o : state.objects)
    if (o.alive) atoms.push_back(atom_at(o.x, o.y, o.type, state.width));
  atoms.push_back(atom_orient(state.orientation));
  for (size_t t = 0; t < state.held.size(); t++)
    if (state.spec->classes[t].category == Category::Resource)
      atoms.push_back(atom_holding(static_cast<int>(t), state.held[t]));
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

std::string serialize(const GameState& state) {
  std::string out;
  out.reserve(32 + state.objects.size() * 9);
  auto put = [&out](const void* p, size_t n) {
    out.append(static_cast<const char*>(p), n);
  };
  int32_t tick = state.tick;
  put(&tick, 4);
  put(&state.score, 8);
  uint8_t st = static_cast<uint8_t>(state.status);
  put(&st, 1);
  int32_t w = state.width, h = state.height;
  put(&w, 4);
  put(&h, 4);
  uint8_t orient = static_cast<uint8_t>(state.orientation);
  put(&orient, 1);
  int32_t acc = state.sub_accum;
  put(&acc, 4);
  for (int16_t hc : state.held) put(&hc, 2);

  std::vector<ObjInst> sorted = state.objects;
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjInst& a, const ObjInst& b) {
              return std::tie(a.type, a.x, a.y, a.vx, a.vy, a.alive) <
                     std::tie(b.type, b.x, b.y, b.vx, b.vy, b.alive);
            });
  for (const auto& o : sorted) {
    put(&o.type, 2);
    put(&o.x, 2);
    put(&o.y, 2);
    put(&o.vx, 1);
    put(&o.vy, 1);
    uint8_t alive = o.alive ? 1 : 0;
    put(&alive, 1);
  }
  return out;
}

}  // namespace olm::engine
