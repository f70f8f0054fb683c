#pragma once

#include <stdexcept>
#include <string>

#include "olmcts/engine/types.hpp"

namespace olm::engine {

class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  int line, column;
};

// Parses a game-definition document. Grammar (line oriented, ';' comments):
//
//   name: <identifier>
//   classes:
//     <name> <glyph> <category> <behavior> [vel=<dx>,<dy>]
//   rules:
//     collide <actor-class> <other-class> <effect>...
//     timeout (win|lose)
//     all-gone <class> (win|lose)
//   traits:
//     avatar-speed <n>[/<d>]
//     movement-axes (both|horizontal|vertical)
//     tick-cap <n>
//     missile-dir (orient|up)
//
// Effects: kill-self kill-other kill-both score=<v> win lose block teleport
//          open-with=<resource-class>
GameSpec load_spec(const std::string& text);

GameSpec load_spec_file(const std::string& path);

// Parses a level document: a rectangular glyph grid, '.' for empty cells.
Level load_level(const std::string& text, const GameSpec& spec);

Level load_level_file(const std::string& path, const GameSpec& spec);

}  // namespace olm::engine
