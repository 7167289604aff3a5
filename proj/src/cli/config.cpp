#include <fstream>

#include "mobench/cli.hpp"
#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench::cli {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::config_error, path.string() + ": " + e.what());
  }
}

}  // namespace

Protocol protocol_from_name(std::string_view name) {
  if (name == "single") return Protocol::single;
  if (name == "reflexion") return Protocol::reflexion;
  if (name == "reexecute") return Protocol::reexecute;
  throw Error(Errc::config_error, "unknown protocol '" + std::string(name) + "'");
}

BackendSpec backend_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  try {
    BackendSpec s;
    if (j.is_string()) {
      s.kind = j.get<std::string>();
      s.label = s.kind;
      return s;
    }
    s.kind = j.at("kind").get<std::string>();
    s.label = j.value("label", s.kind);
    s.fraction = j.value("fraction", 1.0);
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scripts")) s.scripts = j.at("scripts").get<std::map<std::string, std::vector<std::string>>>();
    if (j.contains("script_file")) {
      s.scripts = read_json(resolve(base_dir, j.at("script_file").get<std::string>()))
                      .get<std::map<std::string, std::vector<std::string>>>();
    }
    auto read_plans = [&](const nlohmann::json& doc) {
      for (const auto& [task, list] : doc.items()) {
        auto& plan = s.plans[task];
        for (const auto& a : list) plan.push_back(canonical_from_json(a));
      }
    };
    if (j.contains("plans")) read_plans(j.at("plans"));
    if (j.contains("plan_file")) read_plans(read_json(resolve(base_dir, j.at("plan_file").get<std::string>())));
    if (j.contains("outputs")) s.outputs = j.at("outputs").get<std::vector<std::string>>();
    if (j.contains("verdicts")) s.verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
    s.reply = j.value("reply", s.kind == "no" ? std::string("No") : std::string("Yes"));
    s.http.label = s.label;
    s.http.endpoint = j.value("endpoint", "");
    s.http.model = j.value("model", "");
    s.http.api_key_env = j.value("api_key_env", "");
    s.http.temperature = j.value("temperature", 0.0);
    s.http.timeout_seconds = j.value("timeout_seconds", 60);
    s.http.max_retries = j.value("max_retries", 2);
    if (j.contains("cache_dir")) s.cache_dir = resolve(base_dir, j.at("cache_dir").get<std::string>());
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_error, std::string("backend spec: ") + e.what());
  }
}

RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  try {
    c.tasks = resolve(base_dir, j.at("tasks").get<std::string>());
    if (j.contains("graph")) c.graph = resolve(base_dir, j.at("graph").get<std::string>());
    for (const auto& a : j.at("agents")) c.agents.push_back(backend_spec_from_json(a, base_dir));
    if (j.contains("judge")) c.judge = backend_spec_from_json(j.at("judge"), base_dir);
    if (j.contains("reflector")) c.reflector = backend_spec_from_json(j.at("reflector"), base_dir);
    c.protocol = protocol_from_name(j.value("protocol", std::string("single")));
    c.k = j.value("k", std::size_t{0});
    c.exploration = j.value("exploration", false);
    const auto policy = j.value("env_policy", std::string("lenient"));
    if (policy != "lenient" && policy != "strict") throw Error(Errc::config_error, "env_policy must be lenient or strict");
    c.policy = policy == "strict" ? EnvPolicy::strict : EnvPolicy::lenient;
    c.parallelism = j.value("parallelism", std::size_t{1});
    c.output_dir = resolve(base_dir, j.value("output_dir", std::string("mobench-out")));
    c.seed = j.value("seed", std::uint64_t{0});
    c.gamma = j.value("gamma", 0.9);
    c.normalize_tr = j.value("normalize_tr", true);
    c.context_limit = j.value("context_limit", std::size_t{4096});
    c.date = j.value("date", c.date);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_error, std::string("run config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(read_json(path), path.parent_path());
}

void validate_run_config(const RunConfig& c) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(c.tasks, ec)) throw Error(Errc::config_error, "task file not found: " + c.tasks.string());
  if (c.graph && !std::filesystem::is_regular_file(*c.graph, ec)) {
    throw Error(Errc::config_error, "graph file not found: " + c.graph->string());
  }
  if (c.agents.empty()) throw Error(Errc::config_error, "no agents configured");
  if (c.parallelism < 1) throw Error(Errc::config_error, "parallelism must be >= 1");
  if (c.protocol != Protocol::single && c.k < 1) throw Error(Errc::config_error, "retry protocols need k >= 1");
  if (!(c.gamma >= 0 && c.gamma <= 1)) throw Error(Errc::config_error, "gamma must lie in [0,1]");
  if (c.protocol == Protocol::reflexion && !c.reflector) throw Error(Errc::config_error, "reflexion needs a reflector");
  for (const auto& a : c.agents) {
    if (a.kind != "gold" && a.kind != "prefix" && a.kind != "script" && a.kind != "plan" && a.kind != "random" && a.kind != "http") {
      throw Error(Errc::config_error, "unknown agent kind '" + a.kind + "'");
    }
  }
}

std::filesystem::path trajectory_path(const std::filesystem::path& output_dir, const std::string& agent,
                                      const std::string& task_id, std::size_t trial) {
  return output_dir / "trajectories" / sanitize_label(agent) /
         (sanitize_label(task_id) + ".trial" + std::to_string(trial) + ".jsonl");
}

}  // namespace mobench::cli
