#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mobench/action.hpp"
#include "mobench/task.hpp"

namespace mobench {

enum class Volume { standard, up_adjusted, down_adjusted, muted };
enum class Orientation { vertical, horizontal };

struct DeviceStatus {
  bool screen_on = true;
  Volume volume = Volume::standard;
  Orientation orientation = Orientation::vertical;
  std::vector<std::string> nav_stack;
  std::vector<std::string> installed;

  friend bool operator==(const DeviceStatus&, const DeviceStatus&) = default;
};

enum class Terminal { running, finished, budget_exhausted, error, finished_degenerate };

std::string_view terminal_name(Terminal t);
Terminal terminal_from_name(std::string_view name);

struct TrajectoryStep {
  std::size_t index = 0;  // 1-based
  std::string state_id;
  std::string observation;       // rendered text the agent saw
  std::string observation_hash;  // fnv1a64 of observation
  std::string raw_output;
  std::optional<std::string> format_error;
  std::optional<Action> parsed;
  std::optional<std::string> invalid_reason;
  std::optional<CanonicalAction> action;  // set when the step was executed
  bool unknown_transition = false;
  std::vector<Constraint> violations;
  std::string next_state;
  DeviceStatus status;  // after the step

  bool is_format_error() const { return format_error.has_value(); }
  bool is_invalid_action() const { return !format_error && invalid_reason.has_value(); }
  bool is_finish() const { return action && action->verb == Verb::finish; }
};

struct Trajectory {
  std::string task_id;
  std::string agent;
  std::size_t trial = 0;
  std::size_t max_steps = 0;
  std::vector<TrajectoryStep> steps;
  Terminal terminal = Terminal::running;
  std::string error;
  std::string final_state;

  // Executed actions other than finish, in order, with their step positions.
  std::vector<CanonicalAction> executed_actions() const;
  // 0-based indices into steps of the executed non-finish actions.
  std::vector<std::size_t> executed_step_positions() const;
};

nlohmann::json status_to_json(const DeviceStatus& s);
DeviceStatus status_from_json(const nlohmann::json& j);

// Header line, one line per step, then an end line carrying the terminal flag.
std::string trajectory_to_jsonl(const Trajectory& t);
Trajectory trajectory_from_jsonl(std::string_view text);

}  // namespace mobench
