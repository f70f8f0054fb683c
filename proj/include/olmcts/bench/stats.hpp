#pragma once

#include <cmath>

namespace olm::bench {

// Wald 95% half-width: 1.96 * sqrt(p(1-p)/n).
inline double wald_halfwidth(double p, double n) {
  if (n <= 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / n);
}

// Two-proportion z statistic with pooled variance; 0 when degenerate.
inline double two_proportion_z(double wins_a, double n_a, double wins_b,
                               double n_b) {
  if (n_a <= 0 || n_b <= 0) return 0.0;
  double p1 = wins_a / n_a, p2 = wins_b / n_b;
  double pool = (wins_a + wins_b) / (n_a + n_b);
  double se = std::sqrt(pool * (1.0 - pool) * (1.0 / n_a + 1.0 / n_b));
  if (se == 0.0) return 0.0;
  return (p1 - p2) / se;
}

// Two-sided p-value for a standard normal statistic.
inline double z_to_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

}  // namespace olm::bench
