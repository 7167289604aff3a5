#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mobench/ui_model.hpp"

namespace mobench {

enum class Verb {
  install_app,
  start_app,
  stop_app,
  stop_all_apps,
  click,
  double_click,
  long_click,
  set_text,
  swipe_up,
  swipe_down,
  swipe_left,
  swipe_right,
  press_back,
  press_home,
  press_enter,
  screen_on,
  screen_off,
  volume_up,
  volume_down,
  volume_mute,
  set_orientation,
  screenshot,
  finish,
  unknown,  // well-formed span naming a verb outside the action space
};

inline constexpr std::size_t kVerbCount = 23;
inline constexpr std::array<Verb, kVerbCount> kAllVerbs = {
    Verb::install_app, Verb::start_app,   Verb::stop_app,     Verb::stop_all_apps,   Verb::click,
    Verb::double_click, Verb::long_click,  Verb::set_text,     Verb::swipe_up,        Verb::swipe_down,
    Verb::swipe_left,  Verb::swipe_right, Verb::press_back,   Verb::press_home,      Verb::press_enter,
    Verb::screen_on,   Verb::screen_off,  Verb::volume_up,    Verb::volume_down,     Verb::volume_mute,
    Verb::set_orientation, Verb::screenshot, Verb::finish,
};

enum class ActionLevel { app, component, system, task };

// Canonical name, e.g. "start-app"; used in files and transition tables.
std::string_view verb_name(Verb v);
// Name an agent writes between the '#' delimiters, e.g. "start".
std::string_view verb_wire_name(Verb v);
// Accepts both the wire name and the canonical name.
std::optional<Verb> verb_from_name(std::string_view name);
ActionLevel verb_level(Verb v);
bool is_component_verb(Verb v);  // verbs whose target is a node id
bool is_app_verb(Verb v);        // verbs whose target is a package
bool is_swipe(Verb v);

struct Action {
  Verb verb = Verb::unknown;
  std::string verb_text;  // as written by the agent
  std::optional<std::string> target;
  std::optional<std::string> payload;

  friend bool operator==(const Action& a, const Action& b) {
    return a.verb == b.verb && a.target == b.target && a.payload == b.payload &&
           (a.verb != Verb::unknown || a.verb_text == b.verb_text);
  }
};

struct FormatError {
  std::string reason;
};

using ParseOutcome = std::variant<Action, FormatError>;

// Finds the last well-formed "#verb [arg] [arg]#" span in raw agent output.
ParseOutcome parse_action(std::string_view raw);
std::string format_action(const Action& a);

struct AppInfo {
  std::string package;
  std::string name;  // display name an agent may use with #start [..]#
};

class AppRegistry {
 public:
  AppRegistry() = default;
  explicit AppRegistry(std::vector<AppInfo> apps) : apps_(std::move(apps)) {}

  // Matches package exactly or display name case-insensitively.
  std::optional<std::string> resolve(std::string_view name_or_package) const;
  bool contains(std::string_view package) const;
  void add(AppInfo app);
  const std::vector<AppInfo>& apps() const { return apps_; }
  // Comma-separated display names for the environment prompt.
  std::string app_string() const;

 private:
  std::vector<AppInfo> apps_;
};

struct Validity {
  bool valid = true;
  std::string reason;
  explicit operator bool() const { return valid; }
};

Validity validate_action(const Action& a, const CompressedObservation& obs, const AppRegistry& apps);

struct CanonicalAction {
  Verb verb = Verb::unknown;
  std::string target;   // element path, package, link, or empty
  std::string payload;  // whitespace-normalized

  friend bool operator==(const CanonicalAction&, const CanonicalAction&) = default;
};

// Throws UnknownId when a component verb's id is missing from the map.
CanonicalAction canonicalize(const Action& a, const IdPathMap& map, const AppRegistry* apps = nullptr);

// Equality used for alignment; swipes compare by direction only.
bool action_equal(const CanonicalAction& a, const CanonicalAction& b);
// String key consistent with action_equal (equal actions share a key).
std::string action_key(const CanonicalAction& a);

nlohmann::json canonical_to_json(const CanonicalAction& a);
CanonicalAction canonical_from_json(const nlohmann::json& j);

}  // namespace mobench
