#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mobench/judge.hpp"
#include "mobench/metrics.hpp"
#include "mobench/task.hpp"
#include "mobench/trajectory.hpp"

namespace mobench {

struct ScoringOptions {
  double gamma = 0.9;
  bool normalized = true;
  // Set when the trials came from a K-retry protocol; a run that succeeded at
  // trial 0 then scores Reflexion@K = 0 instead of leaving it absent.
  std::optional<std::size_t> k;
  std::size_t excerpt_budget = 3000;
};

struct TaskScore {
  std::string agent;
  std::string task_id;
  std::string app_key;
  TaskType task_type = TaskType::single_app;
  bool has_gold = true;  // false: only SR is meaningful
  std::size_t trials = 1;
  Terminal terminal = Terminal::running;
  std::size_t steps = 0;

  std::size_t gold_len = 0;
  std::size_t exec_len = 0;
  std::size_t lcs_len = 0;
  double tr = 0, tcr = 0, rrr = 0;
  bool rrr_clamped = false;

  int sr = 0;
  bool judge_nonconforming = false;
  std::vector<int> sr_trials;

  double invalid_format = 0, invalid_action = 0, repeat_actions = 0;
  std::optional<double> nuggets_mining;
  std::optional<double> operation_logic;
  std::optional<bool> completion_aware;
  std::optional<double> reflexion_at_k;

  std::vector<ConstraintLevel> constrained_levels;
  std::vector<ConstraintLevel> violated_levels;
  std::size_t violations = 0;
};

// Scores trial 0 and collects SR across all trials (ordered by trial).
TaskScore score_task(const TaskSpec& task, const std::vector<Trajectory>& trials, Judge& judge,
                     const ScoringOptions& options = {});

struct AgentSummary {
  std::string agent;
  std::size_t tasks = 0;
  double tr = 0, tcr = 0, rrr = 0, sr = 0;
  AgentFineGrained fine;
  // Fraction of tasks constrained at a level that violated it; absent when no
  // task carries that level.
  std::map<ConstraintLevel, std::optional<double>> violation_ratio;
};

struct AppSummary {
  std::string agent;
  std::string app_key;
  std::size_t tasks = 0;
  double sr = 0, tr = 0, tcr = 0, rrr = 0;
  double ir = 0, oc = 0;
};

struct MetricsReport {
  double gamma = 0.9;
  bool normalized = true;
  std::string judge;
  std::vector<TaskScore> tasks;
  std::vector<AgentSummary> agents;
  std::vector<AppSummary> apps;
};

MetricsReport build_report(std::vector<TaskScore> scores, const std::vector<AppComplexity>& complexity,
                           const ScoringOptions& options, std::string judge_label);

nlohmann::ordered_json report_to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::json& j);
std::string report_text(const MetricsReport& r);
std::string report_csv(const MetricsReport& r);

struct CorrelationRow {
  std::string agent;
  std::optional<double> sr_ir, sr_oc, sr_iroc;
  std::vector<std::string> footnotes;
};

struct ComparisonReport {
  DimensionTable dimensions;
  std::vector<AgentSummary> agents;
  std::vector<CorrelationRow> correlations;
};

// Merges agent rows across reports (later reports win on duplicate agents).
ComparisonReport compare_reports(const std::vector<MetricsReport>& reports);
nlohmann::ordered_json comparison_to_json(const ComparisonReport& c);
std::string comparison_text(const ComparisonReport& c);

}  // namespace mobench
