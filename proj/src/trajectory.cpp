#include "mobench/trajectory.hpp"

#include <sstream>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

std::string_view volume_name(Volume v) {
  switch (v) {
    case Volume::standard: return "default";
    case Volume::up_adjusted: return "up-adjusted";
    case Volume::down_adjusted: return "down-adjusted";
    case Volume::muted: return "muted";
  }
  return "default";
}

Volume volume_from_name(std::string_view s) {
  if (s == "up-adjusted") return Volume::up_adjusted;
  if (s == "down-adjusted") return Volume::down_adjusted;
  if (s == "muted") return Volume::muted;
  return Volume::standard;
}

nlohmann::json action_to_json(const Action& a) {
  nlohmann::json j = {{"verb", a.verb == Verb::unknown ? a.verb_text : std::string(verb_name(a.verb))}};
  if (a.target) j["target"] = *a.target;
  if (a.payload) j["payload"] = *a.payload;
  return j;
}

Action action_from_json(const nlohmann::json& j) {
  Action a;
  a.verb_text = j.at("verb").get<std::string>();
  a.verb = verb_from_name(a.verb_text).value_or(Verb::unknown);
  if (a.verb != Verb::unknown) a.verb_text = std::string(verb_wire_name(a.verb));
  if (j.contains("target")) a.target = j.at("target").get<std::string>();
  if (j.contains("payload")) a.payload = j.at("payload").get<std::string>();
  return a;
}

}  // namespace

std::string_view terminal_name(Terminal t) {
  switch (t) {
    case Terminal::running: return "running";
    case Terminal::finished: return "finished";
    case Terminal::budget_exhausted: return "budget-exhausted";
    case Terminal::error: return "error";
    case Terminal::finished_degenerate: return "finished-degenerate";
  }
  return "running";
}

Terminal terminal_from_name(std::string_view name) {
  for (auto t : {Terminal::running, Terminal::finished, Terminal::budget_exhausted, Terminal::error,
                 Terminal::finished_degenerate}) {
    if (terminal_name(t) == name) return t;
  }
  throw Error(Errc::schema_error, "unknown terminal flag '" + std::string(name) + "'");
}

std::vector<CanonicalAction> Trajectory::executed_actions() const {
  std::vector<CanonicalAction> out;
  for (const auto& s : steps) {
    if (s.action && s.action->verb != Verb::finish) out.push_back(*s.action);
  }
  return out;
}

std::vector<std::size_t> Trajectory::executed_step_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].action && steps[i].action->verb != Verb::finish) out.push_back(i);
  }
  return out;
}

nlohmann::json status_to_json(const DeviceStatus& s) {
  return {{"screen_on", s.screen_on},
          {"volume", volume_name(s.volume)},
          {"orientation", s.orientation == Orientation::vertical ? "vertical" : "horizontal"},
          {"nav_stack", s.nav_stack},
          {"installed", s.installed}};
}

DeviceStatus status_from_json(const nlohmann::json& j) {
  DeviceStatus s;
  s.screen_on = j.value("screen_on", true);
  s.volume = volume_from_name(j.value("volume", std::string("default")));
  s.orientation = j.value("orientation", std::string("vertical")) == "horizontal" ? Orientation::horizontal
                                                                                    : Orientation::vertical;
  s.nav_stack = j.value("nav_stack", std::vector<std::string>{});
  s.installed = j.value("installed", std::vector<std::string>{});
  return s;
}

std::string trajectory_to_jsonl(const Trajectory& t) {
  std::string out;
  nlohmann::ordered_json header = {{"type", "header"},
                                   {"task_id", t.task_id},
                                   {"agent", t.agent},
                                   {"trial", t.trial},
                                   {"max_steps", t.max_steps}};
  out += header.dump() + "\n";
  for (const auto& s : t.steps) {
    nlohmann::ordered_json j;
    j["type"] = "step";
    j["step"] = s.index;
    j["state"] = s.state_id;
    j["observation_hash"] = s.observation_hash;
    j["observation"] = s.observation;
    j["raw_output"] = s.raw_output;
    if (s.format_error) {
      j["format_error"] = *s.format_error;
    } else if (s.parsed) {
      j["parsed"] = action_to_json(*s.parsed);
    }
    if (s.invalid_reason) j["invalid_action"] = *s.invalid_reason;
    if (s.action) j["action"] = canonical_to_json(*s.action);
    j["unknown_transition"] = s.unknown_transition;
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& c : s.violations) violations.push_back(constraint_to_json(c));
    j["violations"] = violations;
    j["next_state"] = s.next_state;
    j["status"] = status_to_json(s.status);
    out += j.dump() + "\n";
  }
  nlohmann::ordered_json end = {{"type", "end"}, {"terminal", terminal_name(t.terminal)},
                                {"final_state", t.final_state}, {"steps", t.steps.size()}};
  if (!t.error.empty()) end["error"] = t.error;
  out += end.dump() + "\n";
  return out;
}

Trajectory trajectory_from_jsonl(std::string_view text) {
  Trajectory t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_header = false;
  try {
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const auto j = nlohmann::json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        saw_header = true;
        t.task_id = j.at("task_id").get<std::string>();
        t.agent = j.value("agent", std::string());
        t.trial = j.value("trial", std::size_t{0});
        t.max_steps = j.value("max_steps", std::size_t{0});
      } else if (type == "step") {
        TrajectoryStep s;
        s.index = j.at("step").get<std::size_t>();
        s.state_id = j.value("state", std::string());
        s.observation_hash = j.value("observation_hash", std::string());
        s.observation = j.value("observation", std::string());
        s.raw_output = j.value("raw_output", std::string());
        if (j.contains("format_error")) s.format_error = j.at("format_error").get<std::string>();
        if (j.contains("parsed")) s.parsed = action_from_json(j.at("parsed"));
        if (j.contains("invalid_action")) s.invalid_reason = j.at("invalid_action").get<std::string>();
        if (j.contains("action")) s.action = canonical_from_json(j.at("action"));
        s.unknown_transition = j.value("unknown_transition", false);
        for (const auto& c : j.value("violations", nlohmann::json::array())) s.violations.push_back(constraint_from_json(c));
        s.next_state = j.value("next_state", std::string());
        if (j.contains("status")) s.status = status_from_json(j.at("status"));
        t.steps.push_back(std::move(s));
      } else if (type == "end") {
        t.terminal = terminal_from_name(j.at("terminal").get<std::string>());
        t.final_state = j.value("final_state", std::string());
        t.error = j.value("error", std::string());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema_error, std::string("trajectory: ") + e.what());
  }
  if (!saw_header) throw Error(Errc::schema_error, "trajectory has no header line");
  return t;
}

}  // namespace mobench
