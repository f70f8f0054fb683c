#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "olmcts/bench/harness.hpp"
#include "olmcts/bench/stats.hpp"

namespace olm::bench {

namespace {

struct Bucket {
  int n = 0;
  int wins = 0;
  int losses = 0;
  int early_losses = 0;  // losses that ended before the tick cap
  double sims_sum = 0.0;
  double max_decision_ms = 0.0;
  long over_budget_ticks = 0;
  long ticks = 0;
};

void accumulate(Bucket& b, const RunRecord& r) {
  b.n++;
  if (r.win) {
    b.wins++;
  } else {
    b.losses++;
    if (r.duration_ticks < r.tick_cap) b.early_losses++;
  }
  b.sims_sum += r.mean_sims_per_tick;
  b.max_decision_ms = std::max(b.max_decision_ms, r.max_decision_ms);
  b.over_budget_ticks += r.over_budget_ticks;
  b.ticks += r.ticks;
}

SummaryRow to_row(const std::string& preset, const std::string& game,
                  const Bucket& b) {
  SummaryRow row;
  row.preset = preset;
  row.game = game;
  row.n = b.n;
  double p = b.n > 0 ? static_cast<double>(b.wins) / b.n : 0.0;
  row.win_pct = 100.0 * p;
  row.win_ci = 100.0 * wald_halfwidth(p, b.n);
  row.losses = b.losses;
  double q = b.losses > 0 ? static_cast<double>(b.early_losses) / b.losses
                          : 0.0;
  row.early_loss_pct = 100.0 * q;
  row.early_loss_ci = 100.0 * wald_halfwidth(q, b.losses);
  row.mean_sims = b.n > 0 ? b.sims_sum / b.n : 0.0;
  row.max_decision_ms = b.max_decision_ms;
  row.over_budget_tick_pct =
      b.ticks > 0 ? 100.0 * b.over_budget_ticks / b.ticks : 0.0;
  return row;
}

std::string fmt(double v, int prec = 1) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(prec) << v;
  return out.str();
}

}  // namespace

SummaryTable summarize(const std::vector<RunRecord>& records) {
  std::map<std::string, std::map<std::string, Bucket>> per_game;
  std::map<std::string, Bucket> totals;
  for (const auto& r : records) {
    accumulate(per_game[r.preset][r.game], r);
    accumulate(totals[r.preset], r);
  }
  SummaryTable table;
  for (const auto& [preset, games] : per_game) {
    for (const auto& [game, bucket] : games)
      table.rows.push_back(to_row(preset, game, bucket));
    table.rows.push_back(to_row(preset, "total", totals[preset]));
  }
  return table;
}

std::string summary_to_markdown(const SummaryTable& table) {
  std::ostringstream out;
  out << "| preset | game | n | win % | early-loss % (of losses) |"
         " sims/tick | max ms | over-budget ticks % |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : table.rows) {
    out << "| " << r.preset << " | " << r.game << " | " << r.n << " | "
        << fmt(r.win_pct) << " ± " << fmt(r.win_ci) << " | "
        << fmt(r.early_loss_pct) << " ± " << fmt(r.early_loss_ci) << " | "
        << fmt(r.mean_sims) << " | " << fmt(r.max_decision_ms, 2) << " | "
        << fmt(r.over_budget_tick_pct, 2) << " |\n";
  }
  return out.str();
}

std::string summary_to_csv(const SummaryTable& table) {
  std::ostringstream out;
  out << "preset,game,n,win_pct,win_ci,early_loss_pct,early_loss_ci,"
         "mean_sims_per_tick,max_decision_ms,over_budget_tick_pct\n";
  for (const auto& r : table.rows) {
    out << r.preset << ',' << r.game << ',' << r.n << ',' << fmt(r.win_pct, 4)
        << ',' << fmt(r.win_ci, 4) << ',' << fmt(r.early_loss_pct, 4) << ','
        << fmt(r.early_loss_ci, 4) << ',' << fmt(r.mean_sims, 4) << ','
        << fmt(r.max_decision_ms, 4) << ',' << fmt(r.over_budget_tick_pct, 4)
        << '\n';
  }
  return out.str();
}

CompareReport compare(const std::vector<RunRecord>& records,
                      const std::string& preset_a,
                      const std::string& preset_b) {
  struct WinCount {
    int n = 0;
    int wins = 0;
  };
  std::map<std::string, WinCount> a_games, b_games;
  WinCount a_total, b_total;
  for (const auto& r : records) {
    if (r.preset == preset_a) {
      a_games[r.game].n++;
      a_games[r.game].wins += r.win;
      a_total.n++;
      a_total.wins += r.win;
    } else if (r.preset == preset_b) {
      b_games[r.game].n++;
      b_games[r.game].wins += r.win;
      b_total.n++;
      b_total.wins += r.win;
    }
  }

  auto make_row = [](const std::string& game, const WinCount& a,
                     const WinCount& b) {
    CompareRow row;
    row.game = game;
    double pa = a.n > 0 ? static_cast<double>(a.wins) / a.n : 0.0;
    double pb = b.n > 0 ? static_cast<double>(b.wins) / b.n : 0.0;
    row.win_a = 100.0 * pa;
    row.ci_a = 100.0 * wald_halfwidth(pa, a.n);
    row.win_b = 100.0 * pb;
    row.ci_b = 100.0 * wald_halfwidth(pb, b.n);
    row.delta = row.win_a - row.win_b;
    row.ci_disjoint = row.win_a - row.ci_a > row.win_b + row.ci_b ||
                      row.win_b - row.ci_b > row.win_a + row.ci_a;
    row.z = two_proportion_z(a.wins, a.n, b.wins, b.n);
    row.p_value = z_to_p(row.z);
    return row;
  };

  CompareReport report;
  report.preset_a = preset_a;
  report.preset_b = preset_b;
  for (const auto& [game, a] : a_games) {
    auto it = b_games.find(game);
    if (it != b_games.end())
      report.rows.push_back(make_row(game, a, it->second));
  }
  report.rows.push_back(make_row("total", a_total, b_total));
  return report;
}

std::string compare_to_markdown(const CompareReport& report) {
  std::ostringstream out;
  out << "Comparing " << report.preset_a << " vs " << report.preset_b
      << "\n\n";
  out << "| game | " << report.preset_a << " | " << report.preset_b
      << " | delta | CIs disjoint | z | p |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : report.rows) {
    out << "| " << r.game << " | " << fmt(r.win_a) << " ± " << fmt(r.ci_a)
        << " | " << fmt(r.win_b) << " ± " << fmt(r.ci_b) << " | "
        << fmt(r.delta) << " | " << (r.ci_disjoint ? "yes" : "no") << " | "
        << fmt(r.z, 3) << " | " << fmt(r.p_value, 5) << " |\n";
  }
  return out.str();
}

}  // namespace olm::bench
