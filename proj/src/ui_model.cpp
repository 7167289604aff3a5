#include "mobench/ui_model.hpp"

#include <expat.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <memory>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

constexpr std::array<std::pair<Capability, std::string_view>, 9> kCapabilityNames = {{
    {Capability::clickable, "clickable"},
    {Capability::long_clickable, "long-clickable"},
    {Capability::double_clickable, "double-clickable"},
    {Capability::editable, "editable"},
    {Capability::checkable, "checkable"},
    {Capability::checked, "checked"},
    {Capability::visible, "visible"},
    {Capability::enabled, "enabled"},
    {Capability::scrollable, "scrollable"},
}};

constexpr std::string_view kUncheckedSuffix = "it is currently unchecked, and you can switch it on.";
constexpr std::string_view kCheckedSuffix = "it is currently checked, and you can switch it off.";

std::string_view short_class(std::string_view role_class) {
  const auto dot = role_class.rfind('.');
  return dot == std::string_view::npos ? role_class : role_class.substr(dot + 1);
}

std::string path_segment_name(const UiNode& node) {
  return node.role_class.empty() ? std::string("node") : node.role_class;
}

std::string own_text(const UiNode& node) {
  std::vector<std::string> parts;
  auto text = collapse_whitespace(node.text_content);
  auto desc = collapse_whitespace(node.content_description);
  if (!text.empty()) parts.push_back(text);
  if (!desc.empty() && desc != text) parts.push_back(desc);
  return join(parts, " ");
}

std::string with_state_suffix(const std::string& text, bool checked) {
  const auto suffix = checked ? kCheckedSuffix : kUncheckedSuffix;
  if (text.empty()) return std::string(suffix);
  return text + ", " + std::string(suffix);
}

// "[l,t][r,b]"
Bounds parse_bounds(std::string_view s) {
  Bounds b;
  std::array<int, 4> v{};
  std::size_t n = 0;
  const char* p = s.data();
  const char* end = s.data() + s.size();
  while (p < end && n < 4) {
    if (*p == '-' || (*p >= '0' && *p <= '9')) {
      auto [next, ec] = std::from_chars(p, end, v[n]);
      if (ec != std::errc()) return b;
      ++n;
      p = next;
    } else {
      ++p;
    }
  }
  if (n != 4) return b;
  b.left = v[0];
  b.top = v[1];
  b.right = v[2];
  b.bottom = v[3];
  b.known = true;
  return b;
}

struct ParseState {
  std::vector<UiNode*> stack;
  std::unique_ptr<UiNode> root;
  std::string package;
  int ignored_depth = 0;
};

bool attr_true(const char* v) { return std::string_view(v) == "true"; }

void populate_node(UiNode& node, const XML_Char** attrs, std::string& package) {
  bool saw_visibility = false;
  bool editable_attr = false;
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    const std::string_view key = attrs[i];
    const char* value = attrs[i + 1];
    if (key == "class") {
      node.role_class = value;
    } else if (key == "text") {
      node.text_content = value;
    } else if (key == "content-desc") {
      node.content_description = value;
    } else if (key == "bounds") {
      node.bounds = parse_bounds(value);
    } else if (key == "package") {
      if (package.empty()) package = value;
    } else if (key == "visible-to-user" || key == "visible") {
      saw_visibility = true;
      node.properties.set(Capability::visible, attr_true(value));
    } else if (key == "editable") {
      editable_attr = attr_true(value);
    } else if (auto cap = capability_from_name(key)) {
      node.properties.set(*cap, attr_true(value));
    }
  }
  // Older dumps omit visibility; a node that made it into the dump is on screen.
  if (!saw_visibility) node.properties.set(Capability::visible);
  if (editable_attr || node.role_class.find("EditText") != std::string::npos) {
    node.properties.set(Capability::editable);
  }
}

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& st = *static_cast<ParseState*>(user);
  const std::string_view tag = name;
  const bool is_hierarchy = tag == "hierarchy";
  const bool is_node = tag == "node";
  if (st.ignored_depth > 0 || (!is_hierarchy && !is_node) || (is_hierarchy && !st.stack.empty())) {
    ++st.ignored_depth;
    return;
  }
  if (st.stack.empty()) {
    if (st.root) {  // a second top-level element; expat reports this anyway
      ++st.ignored_depth;
      return;
    }
    st.root = std::make_unique<UiNode>();
    if (is_hierarchy) {
      st.root->role_class = "hierarchy";
      st.root->properties.set(Capability::visible);
    } else {
      populate_node(*st.root, attrs, st.package);
    }
    st.stack.push_back(st.root.get());
    return;
  }
  UiNode& parent = *st.stack.back();
  parent.children.emplace_back();
  UiNode& child = parent.children.back();
  populate_node(child, attrs, st.package);
  // children vector may reallocate later only for this node's own children,
  // never for ancestors, while it is on the stack.
  st.stack.push_back(&child);
}

void XMLCALL on_end(void* user, const XML_Char*) {
  auto& st = *static_cast<ParseState*>(user);
  if (st.ignored_depth > 0) {
    --st.ignored_depth;
    return;
  }
  if (!st.stack.empty()) st.stack.pop_back();
}

struct Flat {
  const UiNode* node;
  int parent;
  std::string path;
};

void flatten(const UiNode& node, int parent, std::string path, std::vector<Flat>& out) {
  const int self = static_cast<int>(out.size());
  out.push_back({&node, parent, path});
  std::map<std::string, int> seen;
  for (const auto& child : node.children) {
    const auto name = path_segment_name(child);
    const int idx = ++seen[name];
    flatten(child, self, path + "/" + name + "[" + std::to_string(idx) + "]", out);
  }
}

}  // namespace

std::string_view capability_name(Capability c) {
  for (const auto& [cap, name] : kCapabilityNames) {
    if (cap == c) return name;
  }
  return "?";
}

std::optional<Capability> capability_from_name(std::string_view name) {
  for (const auto& [cap, n] : kCapabilityNames) {
    if (n == name) return cap;
  }
  return std::nullopt;
}

bool CapabilitySet::any_actionable() const {
  return std::any_of(std::begin(kActionableCapabilities), std::end(kActionableCapabilities),
                     [this](Capability c) { return has(c); });
}

std::vector<std::string> CapabilitySet::names() const {
  std::vector<std::string> out;
  for (const auto& [cap, name] : kCapabilityNames) {
    if (has(cap)) out.emplace_back(name);
  }
  return out;
}

std::vector<std::string> CapabilitySet::actionable_names() const {
  std::vector<std::string> out;
  for (auto cap : kActionableCapabilities) {
    if (has(cap)) out.emplace_back(capability_name(cap));
  }
  return out;
}

bool UiNode::on_screen() const {
  if (!properties.has(Capability::visible)) return false;
  return !bounds.known || bounds.area() > 0;
}

UiTree parse_ui_dump(std::string_view xml_text, const TokenCounter& counter) {
  ParseState st;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(Errc::malformed_xml, "cannot allocate XML parser");
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  if (XML_Parse(parser.get(), xml_text.data(), static_cast<int>(xml_text.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw Error(Errc::malformed_xml,
                std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  if (!st.root) throw Error(Errc::empty_dump, "no hierarchy or node element");
  if (st.root->role_class == "hierarchy" && st.root->children.empty()) {
    throw Error(Errc::empty_dump, "hierarchy has no node children");
  }
  UiTree tree;
  tree.root = std::move(*st.root);
  tree.source_app = st.package;
  tree.raw_token_count = counter(xml_text);
  return tree;
}

bool is_container_class(std::string_view role_class) {
  if (role_class.empty() || role_class == "hierarchy") return true;
  const auto name = short_class(role_class);
  static constexpr std::string_view kContainerSuffixes[] = {
      "Layout", "ViewGroup", "ScrollView", "ListView", "GridView", "RecyclerView",
      "ViewPager", "ViewPager2", "ViewAnimator", "ViewFlipper", "ViewSwitcher", "Toolbar",
      "ActionBarContainer", "ActionBarOverlayLayout", "WebView",
  };
  if (role_class == "android.view.View" || name == "View") return true;
  return std::any_of(std::begin(kContainerSuffixes), std::end(kContainerSuffixes),
                     [&](std::string_view s) { return ends_with(name, s); });
}

NodeClass classify_node(const UiNode& node) {
  if (node.functional()) return NodeClass::component;
  if (!trim(node.text_content).empty() || !trim(node.content_description).empty()) {
    return NodeClass::component;
  }
  return is_container_class(node.role_class) ? NodeClass::layout : NodeClass::component;
}

std::string augment_state_text(const UiNode& node) {
  if (!node.properties.has(Capability::checkable)) {
    throw Error(Errc::not_checkable, "node of class '" + node.role_class + "' is not checkable");
  }
  return with_state_suffix(own_text(node), node.properties.has(Capability::checked));
}

CompressedObservation compress(const UiTree& tree, const TokenCounter& counter) {
  std::vector<Flat> flat;
  flatten(tree.root, -1, root_path(tree.root), flat);
  const std::size_t n = flat.size();

  // Stage 1: layout nodes go; kept_parent is the nearest component ancestor.
  std::vector<bool> kept(n);
  std::vector<int> kept_parent(n, -1);
  // Stage 2: a kept node below another kept node merges into it unless it is
  // both visible and functional.
  std::vector<bool> is_entry(n, false);
  std::vector<int> entry_parent(n, -1);
  std::vector<std::vector<std::string>> texts(n);
  std::vector<std::size_t> entry_children(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    const UiNode& node = *flat[i].node;
    kept[i] = classify_node(node) == NodeClass::component;
    const int p = flat[i].parent;
    if (p >= 0) {
      kept_parent[i] = kept[static_cast<std::size_t>(p)] ? p : kept_parent[static_cast<std::size_t>(p)];
      entry_parent[i] = is_entry[static_cast<std::size_t>(p)] ? p : entry_parent[static_cast<std::size_t>(p)];
    }
    if (!kept[i]) continue;
    const bool top_level = kept_parent[i] < 0;
    is_entry[i] = top_level || (node.functional() && node.on_screen());
    auto text = own_text(node);
    if (is_entry[i]) {
      if (!text.empty()) texts[i].push_back(std::move(text));
      if (entry_parent[i] >= 0) ++entry_children[static_cast<std::size_t>(entry_parent[i])];
    } else if (!text.empty()) {
      texts[static_cast<std::size_t>(entry_parent[i])].push_back(std::move(text));
    }
  }

  CompressedObservation obs;
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> emitted(n, false);
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_entry[i]) continue;
    const UiNode& node = *flat[i].node;
    const bool empty = texts[i].empty() && entry_children[i] == 0 && !node.functional();
    if (kept_parent[i] < 0 && empty) continue;
    const int ep = entry_parent[i];
    depth[i] = (ep >= 0 && emitted[static_cast<std::size_t>(ep)]) ? depth[static_cast<std::size_t>(ep)] + 1 : 0;
    emitted[i] = true;

    ObservationEntry e;
    e.node_id = "nd" + std::to_string(next_id++);
    e.depth = depth[i];
    e.role_class = node.role_class;
    e.rendered_text = join(texts[i], " ");
    if (node.properties.has(Capability::checkable)) {
      e.rendered_text = with_state_suffix(e.rendered_text, node.properties.has(Capability::checked));
    }
    e.element_path = flat[i].path;
    e.flags = node.properties;
    obs.entries.push_back(std::move(e));
  }
  obs.token_count = counter(render(obs));
  return obs;
}

const ObservationEntry* CompressedObservation::find(std::string_view node_id) const {
  for (const auto& e : entries) {
    if (e.node_id == node_id) return &e;
  }
  return nullptr;
}

const ObservationEntry* CompressedObservation::find_by_path(std::string_view element_path) const {
  for (const auto& e : entries) {
    if (e.element_path == element_path) return &e;
  }
  return nullptr;
}

std::string render_entry(const ObservationEntry& entry) {
  std::string line = "[" + entry.node_id + "] " + std::string(short_class(entry.role_class));
  if (!entry.rendered_text.empty()) line += " " + entry.rendered_text;
  const auto caps = entry.flags.actionable_names();
  if (!caps.empty()) line += " [" + join(caps, ", ") + "]";
  return line;
}

std::string render(const CompressedObservation& obs) {
  std::string out;
  for (const auto& e : obs.entries) {
    out.append(2 * e.depth, ' ');
    out += render_entry(e);
    out += '\n';
  }
  return out;
}

IdPathMap::IdPathMap(const CompressedObservation& obs) {
  for (const auto& e : obs.entries) {
    by_id_.emplace(e.node_id, e.element_path);
    by_path_.emplace(e.element_path, e.node_id);
  }
}

std::optional<std::string> IdPathMap::path_of(std::string_view node_id) const {
  auto it = by_id_.find(node_id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> IdPathMap::id_of(std::string_view element_path) const {
  auto it = by_path_.find(element_path);
  if (it == by_path_.end()) return std::nullopt;
  return it->second;
}

std::string root_path(const UiNode& root) {
  if (root.role_class == "hierarchy") return "/hierarchy";
  return "/" + path_segment_name(root) + "[1]";
}

const UiNode* resolve_path(const UiNode& root, std::string_view element_path) {
  const auto rp = root_path(root);
  if (!starts_with(element_path, rp)) return nullptr;
  std::string_view rest = element_path.substr(rp.size());
  const UiNode* cur = &root;
  while (!rest.empty()) {
    if (rest.front() != '/') return nullptr;
    rest.remove_prefix(1);
    const auto slash = rest.find('/');
    const auto seg = rest.substr(0, slash);
    rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
    const auto open = seg.rfind('[');
    if (open == std::string_view::npos || seg.back() != ']') return nullptr;
    const auto name = seg.substr(0, open);
    int idx = 0;
    const auto digits = seg.substr(open + 1, seg.size() - open - 2);
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec != std::errc() || p != digits.data() + digits.size() || idx < 1) return nullptr;
    const UiNode* next = nullptr;
    int seen = 0;
    for (const auto& child : cur->children) {
      if (path_segment_name(child) == name && ++seen == idx) {
        next = &child;
        break;
      }
    }
    if (!next) return nullptr;
    cur = next;
  }
  return cur;
}

nlohmann::json observation_to_json(const CompressedObservation& obs) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : obs.entries) {
    entries.push_back({{"node_id", e.node_id},
                       {"depth", e.depth},
                       {"role", e.role_class},
                       {"text", e.rendered_text},
                       {"path", e.element_path},
                       {"flags", e.flags.names()}});
  }
  return {{"entries", entries}, {"token_count", obs.token_count}};
}

CompressedObservation observation_from_json(const nlohmann::json& j, const TokenCounter& counter) {
  const auto& arr = j.is_array() ? j : j.at("entries");
  if (!arr.is_array()) throw Error(Errc::schema_error, "entries must be an array");
  CompressedObservation obs;
  std::size_t k = 0;
  for (const auto& item : arr) {
    ObservationEntry e;
    e.node_id = item.value("node_id", "nd" + std::to_string(k));
    e.depth = item.value("depth", std::size_t{0});
    e.role_class = item.value("role", std::string("android.view.View"));
    e.rendered_text = item.value("text", std::string());
    e.element_path = item.value("path", std::string());
    if (e.element_path.empty()) throw Error(Errc::schema_error, "entry " + e.node_id + " lacks a path");
    for (const auto& f : item.value("flags", nlohmann::json::array())) {
      auto cap = capability_from_name(f.get<std::string>());
      if (!cap) throw Error(Errc::schema_error, "unknown flag '" + f.get<std::string>() + "'");
      e.flags.set(*cap);
    }
    obs.entries.push_back(std::move(e));
    ++k;
  }
  obs.token_count = counter(render(obs));
  return obs;
}

}  // namespace mobench
