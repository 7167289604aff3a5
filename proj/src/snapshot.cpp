#include "mobench/snapshot.hpp"

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

std::string exact_key(const std::string& from, const CanonicalAction& a) {
  return from + '\x1e' + action_key(a);
}

std::string wildcard_key(const std::string& from, const CanonicalAction& a) {
  return from + '\x1e' + std::string(verb_name(a.verb)) + '\x1f' + a.target;
}

std::string describe(const Transition& t) {
  std::string s = t.from + " --" + std::string(verb_name(t.action.verb));
  if (!t.action.target.empty()) s += " " + t.action.target;
  if (!t.action.payload.empty()) s += " [" + t.action.payload + "]";
  return s + "--> " + t.to;
}

}  // namespace

const SnapshotState& SnapshotGraph::state(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(Errc::schema_error, "no state '" + id + "'");
  return states_[it->second];
}

std::optional<std::string> SnapshotGraph::successor(const std::string& from, const CanonicalAction& a) const {
  if (auto it = exact_.find(exact_key(from, a)); it != exact_.end()) return it->second;
  if (auto it = wildcard_.find(wildcard_key(from, a)); it != wildcard_.end()) return it->second;
  return std::nullopt;
}

SnapshotGraph load_snapshot_graph(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  SnapshotGraph g;
  try {
    if (!doc.is_object()) throw Error(Errc::schema_error, "snapshot document must be an object");
    for (const auto& app : doc.value("apps", nlohmann::json::array())) {
      if (app.is_string()) {
        g.apps_.add({app.get<std::string>(), ""});
      } else {
        g.apps_.add({app.at("package").get<std::string>(), app.value("name", std::string())});
      }
    }
    const auto& states = doc.at("states");
    if (!states.is_array()) throw Error(Errc::schema_error, "states must be an array");
    for (const auto& js : states) {
      SnapshotState s;
      s.id = js.at("id").get<std::string>();
      s.app = js.value("app", std::string());
      s.page_tag = js.value("page_tag", std::string());
      if (g.index_.count(s.id)) throw Error(Errc::schema_error, "duplicate state id '" + s.id + "'");
      if (!s.app.empty() && !g.apps_.contains(s.app)) {
        throw Error(Errc::schema_error, "state " + s.id + " belongs to unregistered app '" + s.app + "'");
      }
      if (js.contains("xml") || js.contains("xml_file")) {
        std::string xml;
        if (js.contains("xml")) {
          xml = js.at("xml").get<std::string>();
        } else {
          xml = read_file(base_dir / js.at("xml_file").get<std::string>());
        }
        s.tree = parse_ui_dump(xml);
        s.observation = compress(*s.tree);
      } else if (js.contains("entries")) {
        s.observation = observation_from_json(js.at("entries"));
      } else {
        throw Error(Errc::schema_error, "state " + s.id + " needs xml, xml_file or entries");
      }
      s.rendered = render(s.observation);
      s.ids = IdPathMap(s.observation);
      g.index_.emplace(s.id, g.states_.size());
      g.states_.push_back(std::move(s));
    }

    if (!doc.contains("initial")) throw Error(Errc::missing_initial_state, "document has no 'initial'");
    g.initial_ = doc.at("initial").get<std::string>();
    if (!g.index_.count(g.initial_)) {
      throw Error(Errc::missing_initial_state, "initial state '" + g.initial_ + "' is not declared");
    }

    std::size_t n = 0;
    for (const auto& jt : doc.value("transitions", nlohmann::json::array())) {
      Transition t;
      t.from = jt.at("from").get<std::string>();
      t.to = jt.at("to").get<std::string>();
      nlohmann::json action = {{"verb", jt.at("verb")}};
      if (jt.contains("target_path")) {
        action["target_path"] = jt.at("target_path");
      } else if (jt.contains("target_id")) {
        if (!g.index_.count(t.from)) {
          throw Error(Errc::dangling_transition, "transition #" + std::to_string(n) + " leaves undeclared state '" + t.from + "'");
        }
        const auto id = jt.at("target_id").get<std::string>();
        auto path = g.state(t.from).ids.path_of(id);
        if (!path) {
          throw Error(Errc::schema_error, "transition #" + std::to_string(n) + ": no element " + id + " in " + t.from);
        }
        action["target_path"] = *path;
      }
      if (jt.contains("payload") && !jt.at("payload").is_null()) action["payload"] = jt.at("payload");
      t.action = canonical_from_json(action);
      t.any_payload = !jt.contains("payload") || jt.at("payload").is_null();
      if (!g.index_.count(t.from) || !g.index_.count(t.to)) {
        throw Error(Errc::dangling_transition, "transition #" + std::to_string(n) + " (" + describe(t) +
                                                   ") references an undeclared state");
      }
      auto& table = t.any_payload && !is_swipe(t.action.verb) ? g.wildcard_ : g.exact_;
      const auto key = t.any_payload && !is_swipe(t.action.verb) ? wildcard_key(t.from, t.action)
                                                                  : exact_key(t.from, t.action);
      if (!table.emplace(key, t.to).second) {
        throw Error(Errc::schema_error, "transition #" + std::to_string(n) + " (" + describe(t) +
                                            ") duplicates an earlier edge");
      }
      g.transitions_.push_back(std::move(t));
      ++n;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema_error, e.what());
  }
  return g;
}

SnapshotGraph load_snapshot_graph_file(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema_error, path.string() + ": " + e.what());
  }
  return load_snapshot_graph(doc, path.parent_path());
}

}  // namespace mobench
