#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mobench/action.hpp"

namespace mobench {

enum class TaskType { single_app, cross_app, constrained };
enum class ConstraintLevel { app, page, component };

std::string_view task_type_name(TaskType t);
TaskType task_type_from_name(std::string_view name);
std::string_view constraint_level_name(ConstraintLevel l);
ConstraintLevel constraint_level_from_name(std::string_view name);

// 15 for single-app and constrained tasks, 30 for cross-app tasks.
std::size_t default_max_steps(TaskType t);

struct Constraint {
  ConstraintLevel level = ConstraintLevel::app;
  std::string subject;  // package, page tag, or element path
  std::string description;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct TaskSpec {
  std::string id;
  TaskType task_type = TaskType::single_app;
  std::string instruction;
  std::vector<std::string> apps;
  std::vector<Constraint> constraints;
  std::vector<CanonicalAction> gold_actions;
  std::size_t max_steps = 15;
  std::string graph;                       // snapshot graph path, resolved against the task file
  std::optional<std::string> final_state;  // expected state after replaying gold

  // "Gmail" or "Gmail+Contacts"
  std::string app_key() const;
};

struct TaskLoadOptions {
  bool allow_empty_gold = false;
  std::filesystem::path base_dir;
};

// Accepts a bare array or {"graph": default, "tasks": [...]}. Throws SchemaError.
std::vector<TaskSpec> load_tasks(const nlohmann::json& doc, const TaskLoadOptions& options = {});
std::vector<TaskSpec> load_task_file(const std::filesystem::path& path, bool allow_empty_gold = false);

nlohmann::json constraint_to_json(const Constraint& c);
Constraint constraint_from_json(const nlohmann::json& j);
nlohmann::json task_to_json(const TaskSpec& t);

}  // namespace mobench
