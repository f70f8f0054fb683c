#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "olmcts/engine/state.hpp"

namespace olm::pathfind {

using Cell = std::pair<int, int>;

struct ObstacleGrid {
  int width = 0, height = 0;
  std::vector<uint8_t> blocked;  // true iff a wall-category object occupies

  bool at(int x, int y) const { return blocked[y * width + x] != 0; }
};

// Walls are the only obstacles; portals and other blockers are passable.
ObstacleGrid obstacle_grid(const engine::GameState& state);

// Shortest 4-neighbor path length from `from` to the nearest target, using
// A* with the min-Manhattan-over-targets heuristic. nullopt if unreachable.
std::optional<int> astar_distance(const ObstacleGrid& grid, Cell from,
                                  const std::vector<Cell>& targets);

// Distance from `from` to the nearest alive object of `type`; 0 if such an
// object occupies `from`. Throws std::out_of_range for cells off the grid.
std::optional<int> distance_to_nearest(const engine::GameState& state,
                                       int from_x, int from_y, int type);

}  // namespace olm::pathfind
