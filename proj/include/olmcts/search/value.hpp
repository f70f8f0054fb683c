#pragma once

#include <algorithm>
#include <cmath>

#include "olmcts/engine/state.hpp"

namespace olm::search {

inline constexpr double kWinBonus = 1e7;

// Terminal-aware state evaluation: +-10^7 plus the running game score.
inline double evaluate_state(const engine::GameState& s) {
  switch (s.status) {
    case engine::Status::Win: return kWinBonus + s.score;
    case engine::Status::Loss: return -kWinBonus + s.score;
    case engine::Status::Ongoing: return s.score;
  }
  return s.score;
}

// Running min/max of raw backpropagated values in the current search. The
// normalization is affine, so argmax decisions are shift/scale invariant.
struct ValueBounds {
  double lo = 0.0, hi = 0.0;
  bool any = false;

  void add(double v) {
    if (!any) {
      lo = hi = v;
      any = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  double norm(double v) const {
    if (!any || lo >= hi) return 0.5;
    return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  }
};

// UCB1 for a visited child. Unvisited children bypass the formula. Decayed
// visit counts can fall below 1; the log term is clamped at 0 so the value
// stays finite.
inline double ucb1(double q_norm, double parent_visits, double visits,
                   double c) {
  double t = std::max(std::log(parent_visits), 0.0);
  return q_norm + c * std::sqrt(t / visits);
}

// Progressive History bias term, added to the UCB1 value.
inline double ph_bias(double history_avg_norm, double weight, double q_norm,
                      double visits) {
  return history_avg_norm * weight / ((1.0 - q_norm) * visits + 1.0);
}

// Mean/max blend used in deterministic games.
inline double mixmax_value(double q_norm, double q_max_norm) {
  return 0.75 * q_norm + 0.25 * q_max_norm;
}

}  // namespace olm::search
