#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mobench/action.hpp"
#include "mobench/ui_model.hpp"

namespace mobench {

struct SnapshotState {
  std::string id;
  std::string app;
  std::string page_tag;
  std::optional<UiTree> tree;  // present when the state came from an xml dump
  CompressedObservation observation;
  std::string rendered;
  IdPathMap ids;
};

struct Transition {
  std::string from;
  CanonicalAction action;
  bool any_payload = false;  // payload omitted in the document
  std::string to;
};

// Recorded, deterministic device: states, functional transitions, app registry.
class SnapshotGraph {
 public:
  const SnapshotState& state(const std::string& id) const;
  bool has_state(const std::string& id) const { return index_.count(id) != 0; }
  const std::string& initial_state() const { return initial_; }
  const AppRegistry& apps() const { return apps_; }
  const std::vector<SnapshotState>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  // An exact payload match wins over a payload-agnostic edge.
  std::optional<std::string> successor(const std::string& from, const CanonicalAction& a) const;

 private:
  friend SnapshotGraph load_snapshot_graph(const nlohmann::json&, const std::filesystem::path&);

  std::vector<SnapshotState> states_;
  std::map<std::string, std::size_t> index_;
  std::vector<Transition> transitions_;
  std::map<std::string, std::string> exact_;
  std::map<std::string, std::string> wildcard_;
  std::string initial_;
  AppRegistry apps_;
};

// Throws SchemaError, DanglingTransition or MissingInitialState. Relative
// "xml_file" references resolve against base_dir.
SnapshotGraph load_snapshot_graph(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
SnapshotGraph load_snapshot_graph_file(const std::filesystem::path& path);

}  // namespace mobench
