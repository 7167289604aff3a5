#include "mobench/action.hpp"

#include <algorithm>
#include <cctype>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

struct VerbInfo {
  Verb verb;
  std::string_view name;
  std::string_view wire;
  ActionLevel level;
  int min_args;
  int max_args;
  bool first_arg_is_target;  // otherwise a lone argument is the payload
};

constexpr VerbInfo kVerbTable[] = {
    {Verb::install_app, "install-app", "install", ActionLevel::app, 1, 1, true},
    {Verb::start_app, "start-app", "start", ActionLevel::app, 1, 1, true},
    {Verb::stop_app, "stop-app", "stop", ActionLevel::app, 1, 1, true},
    {Verb::stop_all_apps, "stop-all-apps", "stop-all", ActionLevel::app, 0, 0, false},
    {Verb::click, "click", "click", ActionLevel::component, 1, 1, true},
    {Verb::double_click, "double-click", "double-click", ActionLevel::component, 1, 1, true},
    {Verb::long_click, "long-click", "long-click", ActionLevel::component, 1, 1, true},
    {Verb::set_text, "set-text", "set-text", ActionLevel::component, 2, 2, true},
    {Verb::swipe_up, "swipe-up", "swipe-up", ActionLevel::component, 0, 1, false},
    {Verb::swipe_down, "swipe-down", "swipe-down", ActionLevel::component, 0, 1, false},
    {Verb::swipe_left, "swipe-left", "swipe-left", ActionLevel::component, 0, 1, false},
    {Verb::swipe_right, "swipe-right", "swipe-right", ActionLevel::component, 0, 1, false},
    {Verb::press_back, "press-back", "press-back", ActionLevel::component, 0, 0, false},
    {Verb::press_home, "press-home", "press-home", ActionLevel::component, 0, 0, false},
    {Verb::press_enter, "press-enter", "press-enter", ActionLevel::component, 0, 0, false},
    {Verb::screen_on, "screen-on", "screen-on", ActionLevel::system, 0, 0, false},
    {Verb::screen_off, "screen-off", "screen-off", ActionLevel::system, 0, 0, false},
    {Verb::volume_up, "volume-up", "volume-up", ActionLevel::system, 0, 0, false},
    {Verb::volume_down, "volume-down", "volume-down", ActionLevel::system, 0, 0, false},
    {Verb::volume_mute, "volume-mute", "volume-mute", ActionLevel::system, 0, 0, false},
    {Verb::set_orientation, "set-orientation", "set-orientation", ActionLevel::system, 1, 1, false},
    {Verb::screenshot, "screenshot", "screenshot", ActionLevel::system, 0, 0, false},
    {Verb::finish, "finish", "finish", ActionLevel::task, 0, 1, false},
};

const VerbInfo* info_of(Verb v) {
  for (const auto& info : kVerbTable) {
    if (info.verb == v) return &info;
  }
  return nullptr;
}

bool verb_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Span {
  std::string verb;
  std::vector<std::string> args;
};

// verb ( ws* '[' ... ']' )* with optional surrounding whitespace.
std::optional<Span> parse_span(std::string_view content) {
  std::size_t i = 0;
  const std::size_t n = content.size();
  while (i < n && is_ws(content[i])) ++i;
  const std::size_t verb_begin = i;
  while (i < n && verb_char(content[i])) ++i;
  if (i == verb_begin) return std::nullopt;
  Span span;
  span.verb = std::string(content.substr(verb_begin, i - verb_begin));
  while (true) {
    while (i < n && is_ws(content[i])) ++i;
    if (i == n) return span;
    if (content[i] != '[') return std::nullopt;
    const std::size_t open = i;
    std::optional<std::size_t> close;
    for (std::size_t q = open + 1; q < n; ++q) {
      if (content[q] != ']') continue;
      std::size_t r = q + 1;
      while (r < n && is_ws(content[r])) ++r;
      if (r == n || content[r] == '[') {
        close = q;
        break;
      }
    }
    if (!close) return std::nullopt;
    span.args.emplace_back(content.substr(open + 1, *close - open - 1));
    i = *close + 1;
  }
}

bool positive_integer(std::string_view s) {
  const auto t = trim(s);
  if (t.empty() || t.size() > 9) return false;
  if (!std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
  return std::stol(t) > 0;
}

ParseOutcome build_action(const Span& span) {
  Action a;
  a.verb_text = span.verb;
  const auto verb = verb_from_name(span.verb);
  const int argc = static_cast<int>(span.args.size());
  if (!verb) {
    if (argc > 2) return FormatError{"too many arguments for '" + span.verb + "'"};
    a.verb = Verb::unknown;
    if (argc >= 1) a.target = span.args[0];
    if (argc >= 2) a.payload = span.args[1];
    return a;
  }
  const auto* info = info_of(*verb);
  a.verb = *verb;
  if (argc < info->min_args || argc > info->max_args) {
    return FormatError{"'" + span.verb + "' takes " + std::to_string(info->min_args) +
                       (info->min_args == info->max_args ? "" : "-" + std::to_string(info->max_args)) +
                       " argument(s), got " + std::to_string(argc)};
  }
  if (argc == 2) {
    a.target = span.args[0];
    a.payload = span.args[1];
  } else if (argc == 1) {
    if (info->first_arg_is_target) {
      a.target = span.args[0];
    } else {
      a.payload = span.args[0];
    }
  }
  if (is_swipe(a.verb) && a.payload && !positive_integer(*a.payload)) {
    return FormatError{"swipe amount must be a positive integer"};
  }
  return a;
}

// Bounded so adversarial outputs stay linear-ish.
constexpr std::size_t kMaxDelimiters = 64;

}  // namespace

std::string_view verb_name(Verb v) {
  if (const auto* info = info_of(v)) return info->name;
  return "unknown";
}

std::string_view verb_wire_name(Verb v) {
  if (const auto* info = info_of(v)) return info->wire;
  return "unknown";
}

std::optional<Verb> verb_from_name(std::string_view name) {
  for (const auto& info : kVerbTable) {
    if (info.wire == name || info.name == name) return info.verb;
  }
  return std::nullopt;
}

ActionLevel verb_level(Verb v) {
  if (const auto* info = info_of(v)) return info->level;
  return ActionLevel::task;
}

bool is_component_verb(Verb v) {
  return v == Verb::click || v == Verb::double_click || v == Verb::long_click || v == Verb::set_text;
}

bool is_app_verb(Verb v) { return v == Verb::install_app || v == Verb::start_app || v == Verb::stop_app; }

bool is_swipe(Verb v) {
  return v == Verb::swipe_up || v == Verb::swipe_down || v == Verb::swipe_left || v == Verb::swipe_right;
}

ParseOutcome parse_action(std::string_view raw) {
  std::vector<std::size_t> hashes;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '#') hashes.push_back(i);
  }
  if (hashes.size() < 2) return FormatError{"no action enclosed in a pair of '#'"};
  if (hashes.size() > kMaxDelimiters) {
    hashes.erase(hashes.begin(), hashes.end() - static_cast<std::ptrdiff_t>(kMaxDelimiters));
  }
  // Latest closing delimiter first, then the nearest opening one.
  for (std::size_t j = hashes.size(); j-- > 1;) {
    for (std::size_t i = j; i-- > 0;) {
      const auto content = raw.substr(hashes[i] + 1, hashes[j] - hashes[i] - 1);
      if (auto span = parse_span(content)) return build_action(*span);
    }
  }
  return FormatError{"no well-formed '#verb [args]#' span"};
}

std::string format_action(const Action& a) {
  std::string out = "#";
  out += a.verb == Verb::unknown ? a.verb_text : std::string(verb_wire_name(a.verb));
  if (a.target) out += " [" + *a.target + "]";
  if (a.payload) out += " [" + *a.payload + "]";
  out += "#";
  return out;
}

std::optional<std::string> AppRegistry::resolve(std::string_view name_or_package) const {
  const auto wanted = trim(name_or_package);
  for (const auto& app : apps_) {
    if (app.package == wanted) return app.package;
  }
  const auto lowered = to_lower(wanted);
  for (const auto& app : apps_) {
    if (!app.name.empty() && to_lower(app.name) == lowered) return app.package;
  }
  return std::nullopt;
}

bool AppRegistry::contains(std::string_view package) const {
  return std::any_of(apps_.begin(), apps_.end(), [&](const AppInfo& a) { return a.package == package; });
}

void AppRegistry::add(AppInfo app) {
  if (!contains(app.package)) apps_.push_back(std::move(app));
}

std::string AppRegistry::app_string() const {
  std::vector<std::string> names;
  for (const auto& app : apps_) names.push_back(app.name.empty() ? app.package : app.name);
  return join(names, ", ");
}

Validity validate_action(const Action& a, const CompressedObservation& obs, const AppRegistry& apps) {
  if (a.verb == Verb::unknown) return {false, "unknown action '" + a.verb_text + "'"};
  if (is_component_verb(a.verb)) {
    const auto* entry = obs.find(a.target.value_or(""));
    if (!entry) return {false, "element '" + a.target.value_or("") + "' is not on the current screen"};
    const auto& f = entry->flags;
    bool ok = false;
    switch (a.verb) {
      case Verb::click:
        ok = f.has(Capability::clickable) || f.has(Capability::long_clickable);
        break;
      case Verb::long_click:
        ok = f.has(Capability::long_clickable) || f.has(Capability::clickable);
        break;
      case Verb::double_click:
        ok = f.has(Capability::double_clickable) || f.has(Capability::clickable);
        break;
      case Verb::set_text:
        ok = f.has(Capability::editable);
        break;
      default:
        break;
    }
    if (!ok) {
      return {false, "capability mismatch: " + std::string(verb_wire_name(a.verb)) + " on " + entry->node_id};
    }
    return {};
  }
  if (a.verb == Verb::start_app || a.verb == Verb::stop_app) {
    if (!apps.resolve(a.target.value_or(""))) return {false, "unknown app '" + a.target.value_or("") + "'"};
    return {};
  }
  if (a.verb == Verb::set_orientation) {
    const auto v = to_lower(trim(a.payload.value_or("")));
    if (v != "horizontal" && v != "vertical") return {false, "orientation must be horizontal or vertical"};
  }
  return {};
}

CanonicalAction canonicalize(const Action& a, const IdPathMap& map, const AppRegistry* apps) {
  CanonicalAction c;
  c.verb = a.verb;
  if (a.target) {
    if (is_component_verb(a.verb)) {
      auto path = map.path_of(*a.target);
      if (!path) throw Error(Errc::unknown_id, "no element '" + *a.target + "' in the id table");
      c.target = *path;
    } else if ((a.verb == Verb::start_app || a.verb == Verb::stop_app) && apps) {
      c.target = apps->resolve(*a.target).value_or(trim(*a.target));
    } else {
      c.target = trim(*a.target);
    }
  }
  if (a.payload) c.payload = collapse_whitespace(*a.payload);
  if (a.verb == Verb::set_orientation) c.payload = to_lower(c.payload);
  return c;
}

bool action_equal(const CanonicalAction& a, const CanonicalAction& b) {
  if (a.verb != b.verb || a.target != b.target) return false;
  return is_swipe(a.verb) || a.payload == b.payload;
}

std::string action_key(const CanonicalAction& a) {
  std::string key(verb_name(a.verb));
  key += '\x1f';
  key += a.target;
  if (!is_swipe(a.verb)) {
    key += '\x1f';
    key += a.payload;
  }
  return key;
}

nlohmann::json canonical_to_json(const CanonicalAction& a) {
  nlohmann::json j = {{"verb", verb_name(a.verb)}};
  if (!a.target.empty()) j["target_path"] = a.target;
  if (!a.payload.empty()) j["payload"] = a.payload;
  return j;
}

CanonicalAction canonical_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("verb")) throw Error(Errc::schema_error, "action needs a verb");
  const auto name = j.at("verb").get<std::string>();
  const auto verb = verb_from_name(name);
  if (!verb) throw Error(Errc::schema_error, "unknown verb '" + name + "'");
  CanonicalAction c;
  c.verb = *verb;
  if (j.contains("target_path") && !j.at("target_path").is_null()) {
    c.target = j.at("target_path").get<std::string>();
  } else if (j.contains("target") && !j.at("target").is_null()) {
    c.target = j.at("target").get<std::string>();
  }
  if (j.contains("payload") && !j.at("payload").is_null()) {
    c.payload = collapse_whitespace(j.at("payload").get<std::string>());
  }
  return c;
}

}  // namespace mobench
