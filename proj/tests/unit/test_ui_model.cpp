#include <doctest.h>

#include <set>

#include "mobench/error.hpp"
#include "mobench/tokenizer.hpp"
#include "mobench/ui_model.hpp"
#include "support.hpp"

using namespace mobench;
using testsupport::flat;

namespace {

std::string dump(const std::string& body) {
  return "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?><hierarchy rotation=\"0\">" + body +
         "</hierarchy>";
}

}  // namespace

TEST_CASE("token_count splits letter and digit runs") {
  CHECK(token_count("") == 0);
  CHECK(token_count("click [nd3]") == 3);
  CHECK(token_count("  hello,world  ") == 2);
  CHECK(token_count("a1b2") == 4);
  CHECK(token_count("caf\xc3\xa9 time") == 2);
  CHECK(token_count("!!! ...") == 0);
}

TEST_CASE("compression_ratio") {
  CHECK(compression_ratio(11707, 1155) == doctest::Approx(1.0 - 1155.0 / 11707.0));
  CHECK(compression_ratio(11707, 1155) == doctest::Approx(0.9013).epsilon(1e-4));
  CHECK(compression_ratio(10, 10) == 0.0);
  CHECK(compression_ratio(10, 20) == 0.0);
  CHECK(compression_ratio(10, 0) == 1.0);
  CHECK_THROWS_AS(compression_ratio(0, 0), Error);
  try {
    compression_ratio(-3, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_before);
  }
  std::vector<std::pair<long long, long long>> rows = {{10, 5}, {100, 0}};
  CHECK(mean_compression_ratio(rows) == doctest::Approx(0.75));
}

TEST_CASE("parse_ui_dump errors") {
  auto code_of = [](const std::string& xml) {
    try {
      parse_ui_dump(xml);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io_error;
  };
  CHECK(code_of("<hierarchy><node class=\"a\"") == Errc::malformed_xml);
  CHECK(code_of("<hierarchy></hierarchy>") == Errc::empty_dump);
  CHECK(code_of("<foo/>") == Errc::empty_dump);
}

TEST_CASE("parse_ui_dump reads attributes") {
  auto t = parse_ui_dump(dump(R"(<node class="android.widget.EditText" text="hi" content-desc="Name" package="com.x"
      clickable="true" checkable="false" visible-to-user="true" bounds="[0,10][100,60]"/>)"));
  CHECK(t.source_app == "com.x");
  REQUIRE(t.root.children.size() == 1);
  const auto& n = t.root.children[0];
  CHECK(n.text_content == "hi");
  CHECK(n.content_description == "Name");
  CHECK(n.properties.has(Capability::clickable));
  CHECK(n.properties.has(Capability::editable));
  CHECK(n.properties.has(Capability::visible));
  CHECK_FALSE(n.properties.has(Capability::checkable));
  CHECK(n.bounds.known);
  CHECK(n.bounds.area() == 5000);
  CHECK(t.raw_token_count > 0);
}

TEST_CASE("classification") {
  UiNode layout;
  layout.role_class = "android.widget.LinearLayout";
  CHECK(classify_node(layout) == NodeClass::layout);
  layout.properties.set(Capability::clickable);
  CHECK(classify_node(layout) == NodeClass::component);
  UiNode labelled;
  labelled.role_class = "android.widget.FrameLayout";
  labelled.content_description = "Card";
  CHECK(classify_node(labelled) == NodeClass::component);
  UiNode text;
  text.role_class = "android.widget.TextView";
  CHECK(classify_node(text) == NodeClass::component);
  CHECK(is_container_class("androidx.recyclerview.widget.RecyclerView"));
  CHECK(is_container_class("android.view.View"));
  CHECK_FALSE(is_container_class("android.widget.Button"));
}

TEST_CASE("single component tree gives nd0") {
  auto t = parse_ui_dump(dump(R"(<node class="android.widget.Button" text="OK" clickable="true" bounds="[0,0][10,10]"/>)"));
  auto obs = compress(t);
  REQUIRE(obs.entries.size() == 1);
  CHECK(obs.entries[0].node_id == "nd0");
  CHECK(render(obs) == "[nd0] Button OK [clickable]\n");
}

TEST_CASE("augment_state_text") {
  UiNode sw;
  sw.role_class = "android.widget.Switch";
  sw.text_content = "Wi-Fi";
  sw.properties.set(Capability::checkable);
  CHECK(augment_state_text(sw) == "Wi-Fi, it is currently unchecked, and you can switch it on.");
  sw.properties.set(Capability::checked);
  CHECK(augment_state_text(sw) == "Wi-Fi, it is currently checked, and you can switch it off.");
  UiNode button;
  button.role_class = "android.widget.Button";
  CHECK_THROWS_AS(augment_state_text(button), Error);
}

TEST_CASE("render of empty observation is empty") {
  CompressedObservation obs;
  CHECK(render(obs).empty());
}

TEST_CASE("non-functional children merge into the entry above") {
  auto t = parse_ui_dump(dump(R"(
    <node class="android.widget.LinearLayout" clickable="true" bounds="[0,0][100,100]">
      <node class="android.widget.LinearLayout" bounds="[0,0][100,50]">
        <node class="android.widget.TextView" text="Bob" bounds="[0,0][100,50]"/>
      </node>
      <node class="android.widget.ImageButton" content-desc="Call" clickable="true" bounds="[0,50][50,100]"/>
      <node class="android.widget.Button" text="Hidden" clickable="true" bounds="[0,0][0,0]"/>
    </node>)"));
  auto obs = compress(t);
  CHECK(render(obs) ==
        "[nd0] LinearLayout Bob Hidden [clickable]\n"
        "  [nd1] ImageButton Call [clickable]\n");
  CHECK(obs.entries[1].element_path ==
        "/hierarchy/android.widget.LinearLayout[1]/android.widget.ImageButton[1]");
  CHECK(obs.entries[1].depth == 1);
}

TEST_CASE("contacts fixture matches golden rendering") {
  for (const auto* id : {"contacts_list", "contacts_settings", "contacts_settings_on", "gmail_email_alice"}) {
    auto obs = compress(parse_ui_dump(testsupport::state_xml(id)));
    CHECK_MESSAGE(render(obs) == read_file(testsupport::data_dir() / "golden" / (std::string(id) + ".txt")), id);
  }
  auto obs = compress(parse_ui_dump(testsupport::state_xml("contacts_list")));
  bool bob = false;
  for (const auto& e : obs.entries) {
    if (e.rendered_text.find("Bob") != std::string::npos) bob = e.flags.has(Capability::clickable);
  }
  CHECK(bob);
}

TEST_CASE("checked switch rendering carries the state sentence") {
  auto off = render(compress(parse_ui_dump(testsupport::state_xml("contacts_settings"))));
  auto on = render(compress(parse_ui_dump(testsupport::state_xml("contacts_settings_on"))));
  CHECK(off.find("Show phonetic name, it is currently unchecked, and you can switch it on.") != std::string::npos);
  CHECK(on.find("Show phonetic name, it is currently checked, and you can switch it off.") != std::string::npos);
}

TEST_CASE("gmail fixture size") {
  auto t = parse_ui_dump(testsupport::state_xml("gmail_inbox"));
  auto obs = compress(t);
  CHECK(t.raw_token_count == 8728);
  CHECK(obs.token_count == 369);
  CHECK(compression_ratio(static_cast<long long>(t.raw_token_count), static_cast<long long>(obs.token_count)) >= 0.80);
}

TEST_CASE("compression invariants over every bundled fixture") {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testsupport::data_dir() / "suite" / "states")) {
    ++files;
    const auto name = entry.path().filename().string();
    CAPTURE(name);
    auto tree = parse_ui_dump(read_file(entry.path()));
    auto obs = compress(tree);
    CHECK(render(obs) == render(compress(tree)));
    CHECK(obs.token_count <= tree.raw_token_count);
    IdPathMap ids(obs);
    CHECK(ids.bijective());
    CHECK(ids.size() == obs.entries.size());

    auto nodes = flat(tree);
    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < nodes.size(); ++i) order[nodes[i].path] = i;
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t k = 0; k < obs.entries.size(); ++k) {
      const auto& e = obs.entries[k];
      CHECK(e.node_id == "nd" + std::to_string(k));
      CHECK(resolve_path(tree.root, e.element_path) != nullptr);
      REQUIRE(order.count(e.element_path));
      if (!first) CHECK(order[e.element_path] > prev);
      prev = order[e.element_path];
      first = false;
    }
    for (const auto& pn : nodes) {
      if (!pn.node->functional()) continue;
      if (ids.id_of(pn.path)) continue;
      std::string own = collapse_whitespace(pn.node->text_content);
      const ObservationEntry* holder = nullptr;
      for (auto it = pn.ancestors.rbegin(); it != pn.ancestors.rend() && !holder; ++it) {
        holder = obs.find_by_path(nodes[*it].path);
      }
      CHECK_MESSAGE(holder != nullptr, pn.path);
      if (holder && !own.empty()) CHECK(holder->rendered_text.find(own) != std::string::npos);
    }
  }
  CHECK(files >= 20);
}

TEST_CASE("resolve_path") {
  auto t = parse_ui_dump(dump(R"(<node class="a.B"><node class="a.C"/><node class="a.C" text="second"/></node>)"));
  const auto* n = resolve_path(t.root, "/hierarchy/a.B[1]/a.C[2]");
  REQUIRE(n);
  CHECK(n->text_content == "second");
  CHECK(resolve_path(t.root, "/hierarchy/a.B[1]/a.C[3]") == nullptr);
  CHECK(resolve_path(t.root, "/hierarchy/a.B[0]") == nullptr);
  CHECK(resolve_path(t.root, "/other") == nullptr);
  CHECK(root_path(t.root) == "/hierarchy");
}

TEST_CASE("observation json round trip") {
  auto obs = compress(parse_ui_dump(testsupport::state_xml("contact_create")));
  auto back = observation_from_json(observation_to_json(obs));
  CHECK(back.entries == obs.entries);
  CHECK(render(back) == render(obs));
}
