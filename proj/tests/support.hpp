#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <string>
#include <unistd.h>

#include "mobench/snapshot.hpp"
#include "mobench/task.hpp"
#include "mobench/text.hpp"
#include "mobench/ui_model.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return MOBENCH_DATA_DIR; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("mobench-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string state_xml(const std::string& id) {
  return mobench::read_file(data_dir() / "suite" / "states" / (id + ".xml"));
}

inline std::shared_ptr<const mobench::SnapshotGraph> suite_graph() {
  static auto g = std::make_shared<const mobench::SnapshotGraph>(
      mobench::load_snapshot_graph_file(data_dir() / "suite" / "graph.json"));
  return g;
}

inline const std::vector<mobench::TaskSpec>& suite_tasks() {
  static auto t = mobench::load_task_file(data_dir() / "suite" / "tasks.json");
  return t;
}

inline const mobench::TaskSpec& suite_task(const std::string& id) {
  for (const auto& t : suite_tasks()) {
    if (t.id == id) return t;
  }
  throw std::runtime_error("no task " + id);
}

// Node id of the first entry on the state's screen whose text starts with prefix.
inline std::string node_with_text(const std::string& state, const std::string& prefix) {
  for (const auto& e : suite_graph()->state(state).observation.entries) {
    if (e.rendered_text.rfind(prefix, 0) == 0) return e.node_id;
  }
  throw std::runtime_error("no entry '" + prefix + "' in " + state);
}

struct PathedNode {
  const mobench::UiNode* node;
  std::string path;
  std::vector<std::size_t> ancestors;  // indices into the flat list
};

inline void walk(const mobench::UiNode& n, const std::string& path, std::vector<std::size_t> anc,
                 std::vector<PathedNode>& out) {
  const std::size_t self = out.size();
  out.push_back({&n, path, anc});
  anc.push_back(self);
  std::map<std::string, int> seen;
  for (const auto& c : n.children) {
    const int k = ++seen[c.role_class];
    walk(c, path + "/" + c.role_class + "[" + std::to_string(k) + "]", anc, out);
  }
}

// Every node in document order with its positional path.
inline std::vector<PathedNode> flat(const mobench::UiTree& t) {
  std::vector<PathedNode> out;
  walk(t.root, "/hierarchy", {}, out);
  return out;
}

}  // namespace testsupport
