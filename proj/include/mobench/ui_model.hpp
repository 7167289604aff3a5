#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mobench/tokenizer.hpp"

namespace mobench {

enum class Capability : std::uint16_t {
  clickable = 1u << 0,
  long_clickable = 1u << 1,
  double_clickable = 1u << 2,
  editable = 1u << 3,
  checkable = 1u << 4,
  checked = 1u << 5,
  visible = 1u << 6,
  enabled = 1u << 7,
  scrollable = 1u << 8,
};

std::string_view capability_name(Capability c);
std::optional<Capability> capability_from_name(std::string_view name);

class CapabilitySet {
 public:
  CapabilitySet() = default;
  CapabilitySet(std::initializer_list<Capability> caps) {
    for (auto c : caps) set(c);
  }

  bool has(Capability c) const { return (bits_ & static_cast<std::uint16_t>(c)) != 0; }
  void set(Capability c, bool on = true) {
    if (on) {
      bits_ |= static_cast<std::uint16_t>(c);
    } else {
      bits_ &= static_cast<std::uint16_t>(~static_cast<std::uint16_t>(c));
    }
  }
  // Any of clickable, long/double-clickable, editable, checkable, scrollable.
  bool any_actionable() const;
  std::vector<std::string> names() const;
  std::vector<std::string> actionable_names() const;
  std::uint16_t bits() const { return bits_; }

  friend bool operator==(CapabilitySet, CapabilitySet) = default;

 private:
  std::uint16_t bits_ = 0;
};

// The capabilities that make a node operable, in rendering order.
inline constexpr Capability kActionableCapabilities[] = {
    Capability::clickable, Capability::long_clickable, Capability::double_clickable,
    Capability::editable,  Capability::checkable,      Capability::scrollable,
};

struct Bounds {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;
  bool known = false;

  long long area() const {
    if (right <= left || bottom <= top) return 0;
    return static_cast<long long>(right - left) * (bottom - top);
  }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct UiNode {
  std::string role_class;
  std::string text_content;
  std::string content_description;
  CapabilitySet properties;
  Bounds bounds;
  std::vector<UiNode> children;

  bool functional() const { return properties.any_actionable(); }
  // False when the visible flag is off or the bounds are known and empty.
  bool on_screen() const;
};

struct UiTree {
  UiNode root;
  std::string source_app;
  std::size_t raw_token_count = 0;
};

// Parses a device hierarchy dump (<hierarchy><node .../></hierarchy>).
// Throws MalformedXml or EmptyDump.
UiTree parse_ui_dump(std::string_view xml_text, const TokenCounter& counter = default_token_counter());

enum class NodeClass { layout, component };

NodeClass classify_node(const UiNode& node);
bool is_container_class(std::string_view role_class);

// Text plus the checked-state sentence. Throws NotCheckable.
std::string augment_state_text(const UiNode& node);

struct ObservationEntry {
  std::string node_id;
  std::size_t depth = 0;
  std::string role_class;
  std::string rendered_text;
  std::string element_path;
  CapabilitySet flags;

  friend bool operator==(const ObservationEntry&, const ObservationEntry&) = default;
};

struct CompressedObservation {
  std::vector<ObservationEntry> entries;
  std::size_t token_count = 0;

  const ObservationEntry* find(std::string_view node_id) const;
  const ObservationEntry* find_by_path(std::string_view element_path) const;
};

CompressedObservation compress(const UiTree& tree, const TokenCounter& counter = default_token_counter());

// One line per entry: two spaces per depth level, "[ndK]", the short role,
// the text, then the actionable capabilities in brackets.
std::string render(const CompressedObservation& obs);
std::string render_entry(const ObservationEntry& entry);

// Bidirectional node_id <-> element_path table for one observation.
class IdPathMap {
 public:
  IdPathMap() = default;
  explicit IdPathMap(const CompressedObservation& obs);

  std::optional<std::string> path_of(std::string_view node_id) const;
  std::optional<std::string> id_of(std::string_view element_path) const;
  std::size_t size() const { return by_id_.size(); }
  bool bijective() const { return by_id_.size() == by_path_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> by_id_;
  std::map<std::string, std::string, std::less<>> by_path_;
};

// Path segments are "class[n]" with n counted among same-class siblings from 1;
// the dump root is "/hierarchy". Returns nullptr when nothing matches.
const UiNode* resolve_path(const UiNode& root, std::string_view element_path);
std::string root_path(const UiNode& root);

nlohmann::json observation_to_json(const CompressedObservation& obs);
CompressedObservation observation_from_json(const nlohmann::json& j,
                                            const TokenCounter& counter = default_token_counter());

}  // namespace mobench
