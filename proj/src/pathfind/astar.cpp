#include "olmcts/pathfind/astar.hpp"

#include <cstdlib>
#include <limits>
#include <queue>
#include <stdexcept>

namespace olm::pathfind {

ObstacleGrid obstacle_grid(const engine::GameState& state) {
  ObstacleGrid g;
  g.width = state.width;
  g.height = state.height;
  g.blocked = state.wall_mask;
  return g;
}

std::optional<int> astar_distance(const ObstacleGrid& grid, Cell from,
                                  const std::vector<Cell>& targets) {
  if (targets.empty()) return std::nullopt;
  auto heuristic = [&targets](int x, int y) {
    int best = std::numeric_limits<int>::max();
    for (const auto& [tx, ty] : targets)
      best = std::min(best, std::abs(x - tx) + std::abs(y - ty));
    return best;
  };
  auto is_target = [&targets](int x, int y) {
    for (const auto& [tx, ty] : targets)
      if (tx == x && ty == y) return true;
    return false;
  };

  const int n = grid.width * grid.height;
  std::vector<int> g_cost(n, std::numeric_limits<int>::max());
  // Min-heap on f = g + h; ties resolved arbitrarily (any expansion order of
  // equal-f nodes yields the same optimal distance with a consistent h).
  using Entry = std::pair<int, int>;  // (f, cell index)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  if (is_target(from.first, from.second)) return 0;
  int start = from.second * grid.width + from.first;
  g_cost[start] = 0;
  open.emplace(heuristic(from.first, from.second), start);

  static constexpr int dx[4] = {0, 0, -1, 1};
  static constexpr int dy[4] = {-1, 1, 0, 0};
  while (!open.empty()) {
    auto [f, idx] = open.top();
    open.pop();
    int x = idx % grid.width, y = idx / grid.width;
    if (f - heuristic(x, y) > g_cost[idx]) continue;  // stale entry
    if (is_target(x, y)) return g_cost[idx];
    for (int d = 0; d < 4; d++) {
      int nx = x + dx[d], ny = y + dy[d];
      if (nx < 0 || nx >= grid.width || ny < 0 || ny >= grid.height) continue;
      if (grid.at(nx, ny)) continue;
      int nidx = ny * grid.width + nx;
      int ng = g_cost[idx] + 1;
      if (ng < g_cost[nidx]) {
        g_cost[nidx] = ng;
        open.emplace(ng + heuristic(nx, ny), nidx);
      }
    }
  }
  return std::nullopt;
}

std::optional<int> distance_to_nearest(const engine::GameState& state,
                                       int from_x, int from_y, int type) {
  if (!state.in_bounds(from_x, from_y))
    throw std::out_of_range("distance_to_nearest: cell out of bounds");
  std::vector<Cell> targets;
  for (int32_t oi : state.by_type[type]) {
    const auto& o = state.objects[oi];
    if (o.alive) targets.emplace_back(o.x, o.y);
  }
  if (targets.empty()) return std::nullopt;
  return astar_distance(obstacle_grid(state), {from_x, from_y}, targets);
}

}  // namespace olm::pathfind
