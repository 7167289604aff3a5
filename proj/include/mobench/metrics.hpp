#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobench/action.hpp"
#include "mobench/snapshot.hpp"
#include "mobench/task.hpp"
#include "mobench/trajectory.hpp"

namespace mobench {

// Pairs are 1-based (gold index, executed index), strictly increasing in both.
struct Alignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t gold_len = 0;
  std::size_t exec_len = 0;

  std::size_t length() const { return pairs.size(); }
  // Gold index of the final pair, 0 when nothing matched.
  std::size_t last_gold() const { return pairs.empty() ? 0 : pairs.back().first; }
};

namespace detail {

// Longest alignment of gold[0..k) x exec[j..) whose final pair uses gold k-1;
// entry [i][j] covers gold[i..k). Negative means impossible.
template <class G, class E, class Eq>
std::vector<std::vector<int>> anchored_suffix_table(const G& gold, const E& exec, std::size_t k, Eq& eq) {
  constexpr int kNone = std::numeric_limits<int>::min() / 2;
  const std::size_t m = exec.size();
  std::vector<std::vector<int>> t(k + 1, std::vector<int>(m + 1, kNone));
  if (k == 0) return t;
  for (std::size_t jj = m; jj-- > 0;) {
    t[k - 1][jj] = eq(gold[k - 1], exec[jj]) ? 1 : t[k - 1][jj + 1];
  }
  for (std::size_t ii = k - 1; ii-- > 0;) {
    for (std::size_t jj = m; jj-- > 0;) {
      int best = std::max(t[ii + 1][jj], t[ii][jj + 1]);
      if (eq(gold[ii], exec[jj]) && t[ii + 1][jj + 1] > 0) best = std::max(best, 1 + t[ii + 1][jj + 1]);
      t[ii][jj] = best;
    }
  }
  return t;
}

}  // namespace detail

// Longest common subsequence under eq. Among maximum alignments the one with
// the largest final gold index wins, then lexicographically smallest executed
// indices, then smallest gold indices.
template <class G, class E, class Eq>
Alignment lcs_align(const G& gold, const E& exec, Eq eq) {
  Alignment al;
  al.gold_len = gold.size();
  al.exec_len = exec.size();
  const std::size_t n = gold.size();
  const std::size_t m = exec.size();
  if (n == 0 || m == 0) return al;

  int best = 0;
  std::size_t best_k = 0;
  std::vector<std::vector<int>> table;
  for (std::size_t k = n; k >= 1; --k) {
    auto t = detail::anchored_suffix_table(gold, exec, k, eq);
    if (t[0][0] > best) {
      best = t[0][0];
      best_k = k;
      table = std::move(t);
    }
  }
  if (best <= 0) return al;

  std::size_t gi = 0;
  std::size_t ej = 0;
  for (int r = best; r >= 1; --r) {
    bool placed = false;
    for (std::size_t j = ej; j < m && !placed; ++j) {
      if (r == 1) {
        if (eq(gold[best_k - 1], exec[j])) {
          al.pairs.emplace_back(best_k, j + 1);
          placed = true;
        }
        continue;
      }
      for (std::size_t i = gi; i + 1 < best_k; ++i) {
        if (eq(gold[i], exec[j]) && table[i + 1][j + 1] >= r - 1) {
          al.pairs.emplace_back(i + 1, j + 1);
          gi = i + 1;
          ej = j + 1;
          placed = true;
          break;
        }
      }
    }
  }
  return al;
}

Alignment lcs_align(std::span<const CanonicalAction> gold, std::span<const CanonicalAction> exec);

// Throws GammaOutOfRange; returns 0 for an empty alignment.
double task_reward(const Alignment& al, double gamma = 0.9, bool normalized = true);
double completion_ratio(const Alignment& al);
// min(1, L / executed_len); 0 when nothing was executed.
double redundancy(std::size_t gold_len, std::size_t executed_len);

// Throw EmptyTrajectory on a trajectory without steps.
double invalid_format_ratio(const Trajectory& t);
double invalid_action_ratio(const Trajectory& t);
double repeat_action_ratio(const Trajectory& t);
// Steps whose (observation hash, canonical action) already occurred earlier.
std::vector<std::size_t> repeat_step_indices(const Trajectory& t);

// Mean over aligned component-verb steps of
// len(targeted entry line) / len(whole observation); nullopt when none.
std::optional<double> nuggets_mining(const Trajectory& t, const Alignment& al);
std::optional<double> operation_logic(const Alignment& al);
// Per task: nullopt when the final gold action was not matched, else whether
// the step right after the matching one is a finish.
std::optional<bool> completion_awareness(const Trajectory& t, const Alignment& al);
// Fraction of the tasks that reached completion whose next action was finish.
std::optional<double> awareness_of_completion(std::span<const std::optional<bool>> per_task);

// SR_K - SR_0 via the telescoping sum; throws TooShort below two entries.
double reflexion_at_k(std::span<const int> sr);

// Sample Pearson correlation; throws DegenerateVariance.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct AgentFineGrained {
  std::string agent;
  double invalid_format = 0;
  double invalid_action = 0;
  std::optional<double> nuggets_mining;
  std::optional<double> operation_logic;
  std::optional<double> awareness_of_completion;
  double repeat_actions = 0;
  std::optional<double> reflexion_at_k;
};

struct DimensionScores {
  std::string agent;
  double understanding = 0;
  double reasoning = 0;
  double exploration = 0;
  double reflection = 0;
  // Before the final cross-agent standardization.
  double raw_understanding = 0;
  double raw_reasoning = 0;
  double raw_exploration = 0;
  double raw_reflection = 0;
};

struct Range {
  double min = 0;
  double max = 0;
};

struct DimensionTable {
  std::vector<DimensionScores> rows;
  bool degenerate = false;  // a single agent: scores are raw, nothing normalized
  Range nuggets_mining, operation_logic, reflexion_at_k;
  Range understanding, reasoning, exploration, reflection;
};

// Missing nuggets mining counts as the worst value seen; missing operation
// logic, awareness or Reflexion@K count as 0.
DimensionTable dimension_scores(std::span<const AgentFineGrained> cohort);

struct AppComplexity {
  std::string app_key;
  double ir = 0;  // mean observation tokens over the app's states
  double oc = 0;  // 1 / mean gold length over the app's tasks
  double ir_x_oc() const { return ir * oc; }
};

// One row per app key of the tasks; throws NoTasksForApp when a requested key has no tasks.
std::vector<AppComplexity> ir_oc(const std::vector<const SnapshotGraph*>& graphs, std::span<const TaskSpec> tasks,
                                 const std::vector<std::string>& app_keys = {});

}  // namespace mobench
