#include "mobench/task.hpp"

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

std::string_view task_type_name(TaskType t) {
  switch (t) {
    case TaskType::single_app: return "single-app";
    case TaskType::cross_app: return "cross-app";
    case TaskType::constrained: return "constrained";
  }
  return "single-app";
}

TaskType task_type_from_name(std::string_view name) {
  if (name == "single-app") return TaskType::single_app;
  if (name == "cross-app") return TaskType::cross_app;
  if (name == "constrained") return TaskType::constrained;
  throw Error(Errc::schema_error, "unknown task_type '" + std::string(name) + "'");
}

std::string_view constraint_level_name(ConstraintLevel l) {
  switch (l) {
    case ConstraintLevel::app: return "app";
    case ConstraintLevel::page: return "page";
    case ConstraintLevel::component: return "component";
  }
  return "app";
}

ConstraintLevel constraint_level_from_name(std::string_view name) {
  if (name == "app") return ConstraintLevel::app;
  if (name == "page") return ConstraintLevel::page;
  if (name == "component") return ConstraintLevel::component;
  throw Error(Errc::schema_error, "unknown constraint level '" + std::string(name) + "'");
}

std::size_t default_max_steps(TaskType t) { return t == TaskType::cross_app ? 30 : 15; }

std::string TaskSpec::app_key() const { return join(apps, "+"); }

nlohmann::json constraint_to_json(const Constraint& c) {
  return {{"level", constraint_level_name(c.level)}, {"subject", c.subject}, {"description", c.description}};
}

Constraint constraint_from_json(const nlohmann::json& j) {
  Constraint c;
  c.level = constraint_level_from_name(j.at("level").get<std::string>());
  c.subject = j.at("subject").get<std::string>();
  c.description = j.value("description", std::string());
  const bool looks_like_path = starts_with(c.subject, "/");
  if (c.subject.empty() || (c.level == ConstraintLevel::component) != looks_like_path) {
    throw Error(Errc::schema_error, "constraint subject '" + c.subject + "' does not match level " +
                                        std::string(constraint_level_name(c.level)));
  }
  return c;
}

namespace {

TaskSpec task_from_json(const nlohmann::json& j, const TaskLoadOptions& options, const std::string& default_graph) {
  TaskSpec t;
  t.id = j.at("id").get<std::string>();
  t.task_type = task_type_from_name(j.value("task_type", std::string("single-app")));
  t.instruction = j.at("instruction").get<std::string>();
  t.apps = j.value("apps", std::vector<std::string>{});
  for (const auto& c : j.value("constraints", nlohmann::json::array())) t.constraints.push_back(constraint_from_json(c));
  for (const auto& a : j.value("gold_actions", nlohmann::json::array())) t.gold_actions.push_back(canonical_from_json(a));
  t.max_steps = j.value("max_steps", default_max_steps(t.task_type));
  if (j.contains("final_state")) t.final_state = j.at("final_state").get<std::string>();
  auto graph = j.value("graph", default_graph);
  if (!graph.empty()) {
    std::filesystem::path gp(graph);
    if (gp.is_relative() && !options.base_dir.empty()) gp = options.base_dir / gp;
    t.graph = gp.lexically_normal().string();
  }
  if (t.gold_actions.empty() && !options.allow_empty_gold) {
    throw Error(Errc::schema_error, "task " + t.id + " has no gold_actions");
  }
  if (t.max_steps == 0) throw Error(Errc::schema_error, "task " + t.id + " has max_steps 0");
  if (t.task_type == TaskType::constrained && t.constraints.empty()) {
    throw Error(Errc::schema_error, "constrained task " + t.id + " has no constraints");
  }
  return t;
}

}  // namespace

std::vector<TaskSpec> load_tasks(const nlohmann::json& doc, const TaskLoadOptions& options) {
  std::string default_graph;
  const nlohmann::json* arr = &doc;
  if (doc.is_object()) {
    default_graph = doc.value("graph", std::string());
    if (!doc.contains("tasks")) throw Error(Errc::schema_error, "task document needs a 'tasks' array");
    arr = &doc.at("tasks");
  }
  if (!arr->is_array()) throw Error(Errc::schema_error, "tasks must be an array");
  std::vector<TaskSpec> tasks;
  try {
    for (const auto& j : *arr) tasks.push_back(task_from_json(j, options, default_graph));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema_error, e.what());
  }
  return tasks;
}

std::vector<TaskSpec> load_task_file(const std::filesystem::path& path, bool allow_empty_gold) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema_error, path.string() + ": " + e.what());
  }
  TaskLoadOptions options;
  options.allow_empty_gold = allow_empty_gold;
  options.base_dir = path.parent_path();
  return load_tasks(doc, options);
}

nlohmann::json task_to_json(const TaskSpec& t) {
  nlohmann::json constraints = nlohmann::json::array();
  for (const auto& c : t.constraints) constraints.push_back(constraint_to_json(c));
  nlohmann::json gold = nlohmann::json::array();
  for (const auto& a : t.gold_actions) gold.push_back(canonical_to_json(a));
  nlohmann::json j = {{"id", t.id},
                      {"task_type", task_type_name(t.task_type)},
                      {"instruction", t.instruction},
                      {"apps", t.apps},
                      {"constraints", constraints},
                      {"gold_actions", gold},
                      {"max_steps", t.max_steps}};
  if (!t.graph.empty()) j["graph"] = t.graph;
  if (t.final_state) j["final_state"] = *t.final_state;
  return j;
}

}  // namespace mobench
