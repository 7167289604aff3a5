#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mobench/agent.hpp"
#include "mobench/env.hpp"
#include "mobench/http_backend.hpp"
#include "mobench/judge.hpp"

namespace mobench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBackend = 2;
inline constexpr int kExitVerification = 3;

// kind: gold | prefix | plan | script | random | http (agents); yes | no | oracle |
// script | http (judges); script | http (reflectors).
struct BackendSpec {
  std::string kind;
  std::string label;
  double fraction = 1.0;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::vector<std::string>> scripts;  // agent scripts by task id
  std::map<std::string, std::vector<CanonicalAction>> plans; // plan agent actions by task id
  std::vector<std::string> outputs;                         // reflector outputs
  std::map<std::string, std::string> verdicts;              // judge replies by task id
  std::string reply = "Yes";
  HttpBackendConfig http;
  std::filesystem::path cache_dir;
};

inline BackendSpec backend_kind(std::string kind) {
  BackendSpec s;
  s.label = kind;
  s.kind = std::move(kind);
  return s;
}

enum class Protocol { single, reflexion, reexecute };
Protocol protocol_from_name(std::string_view name);

struct RunConfig {
  std::filesystem::path tasks;
  std::optional<std::filesystem::path> graph;  // overrides each task's own graph
  std::vector<BackendSpec> agents;
  BackendSpec judge = backend_kind("yes");
  std::optional<BackendSpec> reflector;
  Protocol protocol = Protocol::single;
  std::size_t k = 0;
  bool exploration = false;
  EnvPolicy policy = EnvPolicy::lenient;
  std::size_t parallelism = 1;
  std::filesystem::path output_dir = "mobench-out";
  std::uint64_t seed = 0;
  double gamma = 0.9;
  bool normalize_tr = true;
  std::size_t context_limit = 4096;
  std::string date = "2024-01-01";
};

// Relative paths resolve against base_dir. Throws ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);
BackendSpec backend_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
void validate_run_config(const RunConfig& c);

std::filesystem::path trajectory_path(const std::filesystem::path& output_dir, const std::string& agent,
                                      const std::string& task_id, std::size_t trial);

// Owns whatever backends an agent or judge needs.
struct AgentHandle {
  std::vector<std::unique_ptr<AgentBackend>> backends;
  std::unique_ptr<Agent> agent;
};
AgentHandle make_agent(const BackendSpec& spec, std::uint64_t run_seed);

struct JudgeHandle {
  std::vector<std::unique_ptr<AgentBackend>> backends;
  std::unique_ptr<Judge> judge;
};
JudgeHandle make_judge(const BackendSpec& spec);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct MetricsArgs {
  std::filesystem::path trajectories;
  std::filesystem::path tasks;
  std::optional<std::filesystem::path> graph;
  BackendSpec judge = backend_kind("yes");
  std::filesystem::path output_dir;
  double gamma = 0.9;
  bool normalize_tr = true;
  std::optional<std::size_t> k;
  std::size_t parallelism = 1;
};
int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err);
int cmd_report(const std::vector<std::filesystem::path>& reports, const std::filesystem::path& output_dir,
               std::ostream& out, std::ostream& err);
int cmd_replay(const std::filesystem::path& tasks, const std::optional<std::filesystem::path>& graph,
               std::ostream& out, std::ostream& err);
int cmd_compress(const std::filesystem::path& xml, bool json, bool stats, std::ostream& out, std::ostream& err);
int cmd_validate(const std::vector<std::filesystem::path>& files, std::ostream& out, std::ostream& err);

struct TaskgenArgs {
  std::filesystem::path corpus;
  std::vector<std::string> apps;
  std::filesystem::path output;
  std::size_t top_k = 3;
  std::size_t rounds = 1;
  std::vector<std::string> modes = {"in-depth", "in-breadth"};
  double threshold = 0.85;
  BackendSpec backend = backend_kind("template");
};
int cmd_taskgen(const TaskgenArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to the subcommands.
int main(int argc, char** argv);

}  // namespace mobench::cli
