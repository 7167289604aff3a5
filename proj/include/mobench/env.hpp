#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobench/snapshot.hpp"
#include "mobench/task.hpp"
#include "mobench/trajectory.hpp"

namespace mobench {

enum class EnvPolicy { lenient, strict };

struct ResetResult {
  std::string observation;
  DeviceStatus status;
  std::vector<std::string> warnings;  // e.g. task apps missing from the registry
};

struct StepInfo {
  std::size_t step_index = 0;
  bool unknown_transition = false;
  std::vector<Constraint> violations;
  std::string state_id;  // after the step
  Terminal terminal = Terminal::running;
};

struct StepResult {
  std::string observation;
  bool done = false;
  StepInfo info;
};

// Violated constraints for one executed step; pure.
std::vector<Constraint> check_constraints(const CanonicalAction& a, const SnapshotState& pre,
                                          const SnapshotState& post, const TaskSpec& task);

// One episode at a time over a shared, immutable snapshot graph.
class Environment {
 public:
  explicit Environment(std::shared_ptr<const SnapshotGraph> graph, EnvPolicy policy = EnvPolicy::lenient);

  ResetResult reset(const TaskSpec& task);
  // Throws EpisodeClosed after done; in strict mode an off-graph action throws
  // UnknownTransition and closes the episode with terminal=error.
  StepResult step(const CanonicalAction& a);
  // Consumes one step of budget without touching the device (unparseable or
  // invalid agent output).
  StepResult skip_step();

  const SnapshotGraph& graph() const { return *graph_; }
  const SnapshotState& current_state() const { return graph_->state(current_); }
  const DeviceStatus& status() const { return status_; }
  const AppRegistry& registry() const { return registry_; }
  std::size_t steps_taken() const { return steps_; }
  std::size_t max_steps() const { return max_steps_; }
  bool done() const { return terminal_ != Terminal::running; }
  Terminal terminal() const { return terminal_; }
  EnvPolicy policy() const { return policy_; }

  // Used by replay, which executes sequences longer than the agent budget.
  void set_max_steps(std::size_t n) { max_steps_ = n; }

 private:
  void move_to(const std::string& next);
  StepResult finish_step(StepInfo info);

  std::shared_ptr<const SnapshotGraph> graph_;
  EnvPolicy policy_;
  const TaskSpec* task_ = nullptr;
  std::string current_;
  DeviceStatus status_;
  AppRegistry registry_;
  std::size_t steps_ = 0;
  std::size_t max_steps_ = 0;
  Terminal terminal_ = Terminal::error;
};

struct ReplayReport {
  Trajectory trajectory;
  std::optional<std::size_t> first_mismatch;  // 0-based index into gold
  std::string final_state;
};

// Executes gold verbatim (lenient) and reports the first step whose
// transition is not in the graph.
ReplayReport replay(std::shared_ptr<const SnapshotGraph> graph, const TaskSpec& task,
                    std::span<const CanonicalAction> gold);

}  // namespace mobench
