#include <doctest.h>

#include <random>
#include <set>

#include "mobench/action.hpp"
#include "mobench/error.hpp"
#include "mobench/ui_model.hpp"
#include "support.hpp"

using namespace mobench;

namespace {

Action sample(Verb v) {
  Action a;
  a.verb = v;
  a.verb_text = std::string(verb_wire_name(v));
  switch (v) {
    case Verb::install_app:
    case Verb::start_app:
    case Verb::stop_app:
      a.target = "Contacts";
      break;
    case Verb::click:
    case Verb::double_click:
    case Verb::long_click:
      a.target = "nd3";
      break;
    case Verb::set_text:
      a.target = "nd2";
      a.payload = "hello world";
      break;
    case Verb::swipe_up:
    case Verb::swipe_down:
    case Verb::swipe_left:
    case Verb::swipe_right:
      a.payload = "2";
      break;
    case Verb::set_orientation:
      a.payload = "horizontal";
      break;
    default:
      break;
  }
  return a;
}

Action parsed(std::string_view raw) {
  auto r = parse_action(raw);
  REQUIRE(std::holds_alternative<Action>(r));
  return std::get<Action>(r);
}

bool is_error(std::string_view raw) { return std::holds_alternative<FormatError>(parse_action(raw)); }

}  // namespace

TEST_CASE("verb table") {
  std::set<std::string_view> names;
  for (auto v : kAllVerbs) {
    names.insert(verb_name(v));
    CHECK(verb_from_name(verb_name(v)) == v);
    CHECK(verb_from_name(verb_wire_name(v)) == v);
  }
  CHECK(names.size() == 23);
  CHECK(verb_name(Verb::start_app) == "start-app");
  CHECK(verb_wire_name(Verb::start_app) == "start");
  CHECK(verb_level(Verb::volume_up) == ActionLevel::system);
  CHECK(verb_level(Verb::finish) == ActionLevel::task);
  CHECK(verb_level(Verb::install_app) == ActionLevel::app);
  CHECK(verb_level(Verb::swipe_left) == ActionLevel::component);
  CHECK_FALSE(verb_from_name("teleport"));
}

TEST_CASE("all verbs round trip format -> parse -> format") {
  for (auto v : kAllVerbs) {
    auto a = sample(v);
    const auto text = format_action(a);
    CAPTURE(text);
    auto back = parsed(text);
    CHECK(back == a);
    CHECK(format_action(back) == text);
  }
}

TEST_CASE("parse_action takes the last well-formed span") {
  auto a = parsed("Thought: first #click [nd1]# then\nAction: #click [nd4]#");
  CHECK(a.verb == Verb::click);
  CHECK(a.target == "nd4");
  auto s = parsed("Action: #set-text [nd2] [Trip to Paris]#");
  CHECK(s.target == "nd2");
  CHECK(s.payload == "Trip to Paris");
  auto st = parsed("#start [Gmail]#");
  CHECK(st.verb == Verb::start_app);
  CHECK(st.target == "Gmail");
  auto br = parsed("#set-text [nd1] [a [b] c]#");
  CHECK(br.payload == "a [b] c");
  CHECK(parsed("#finish#").verb == Verb::finish);
  CHECK(parsed("# swipe-up [3] #").payload == "3");
}

TEST_CASE("parse_action format errors") {
  CHECK(is_error(""));
  CHECK(is_error("I will click the button"));
  CHECK(is_error("#click#"));
  CHECK(is_error("#click [nd1] [nd2]#"));
  CHECK(is_error("#set-text [nd1]#"));
  CHECK(is_error("#swipe-up [far]#"));
  CHECK(is_error("#swipe-up [0]#"));
  CHECK(is_error("#click [nd1]"));
  auto unk = parsed("#teleport [mars]#");
  CHECK(unk.verb == Verb::unknown);
  CHECK(unk.verb_text == "teleport");
  CHECK(format_action(unk) == "#teleport [mars]#");
}

TEST_CASE("parse_action fuzz") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "#[] \nabcdeklnrstx-0123456789_";
  const std::vector<std::string> pieces = {"#", "[", "]", "click", "set-text", "nd", "3", " ", "start", "finish", "\n"};
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k) {
      if (rng() % 2) {
        s += alphabet[rng() % alphabet.size()];
      } else {
        s += pieces[rng() % pieces.size()];
      }
    }
    auto r = parse_action(s);
    if (auto* a = std::get_if<Action>(&r)) {
      auto again = parse_action(format_action(*a));
      if (auto* b = std::get_if<Action>(&again)) {
        CHECK(format_action(*b) == format_action(*a));
      }
    }
  }
}

TEST_CASE("validate and canonicalize against a real screen") {
  const auto& st = testsupport::suite_graph()->state("contacts_list");
  const auto& apps = testsupport::suite_graph()->apps();
  auto v = [&](std::string_view raw) { return validate_action(parsed(raw), st.observation, apps); };
  CHECK(v("#click [nd4]#").valid);
  CHECK(v("#long-click [nd4]#").valid);
  CHECK_FALSE(v("#click [nd99]#").valid);
  CHECK_FALSE(v("#click [nd0]#").valid);
  CHECK(v("#set-text [nd2] [bob]#").valid);
  CHECK_FALSE(v("#set-text [nd4] [bob]#").valid);
  CHECK(v("#start [Gmail]#").valid);
  CHECK(v("#start [com.google.android.gm]#").valid);
  CHECK_FALSE(v("#start [Maps]#").valid);
  CHECK_FALSE(v("#teleport#").valid);
  CHECK(v("#set-orientation [Horizontal]#").valid);
  CHECK_FALSE(v("#set-orientation [diagonal]#").valid);
  CHECK(v("#press-back#").valid);

  auto c = canonicalize(parsed("#click [nd4]#"), st.ids, &apps);
  CHECK(c.verb == Verb::click);
  CHECK(c.target == *st.ids.path_of("nd4"));
  auto s = canonicalize(parsed("#start [gmail]#"), st.ids, &apps);
  CHECK(s.target == "com.google.android.gm");
  auto t = canonicalize(parsed("#set-text [nd2] [  Bob   Smith ]#"), st.ids, &apps);
  CHECK(t.payload == "Bob Smith");
  try {
    canonicalize(parsed("#click [nd77]#"), st.ids, &apps);
    FAIL("expected UnknownId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_id);
  }
}

TEST_CASE("action equality and keys") {
  CanonicalAction up1{Verb::swipe_up, "", "1"};
  CanonicalAction up3{Verb::swipe_up, "", "3"};
  CanonicalAction down{Verb::swipe_down, "", "1"};
  CHECK(action_equal(up1, up3));
  CHECK(action_key(up1) == action_key(up3));
  CHECK_FALSE(action_equal(up1, down));
  CanonicalAction t1{Verb::set_text, "/p", "a"};
  CanonicalAction t2{Verb::set_text, "/p", "b"};
  CHECK_FALSE(action_equal(t1, t2));
  CHECK(action_key(t1) != action_key(t2));
  auto j = canonical_to_json(t1);
  CHECK(canonical_from_json(j) == t1);
  CHECK_THROWS_AS(canonical_from_json(nlohmann::json{{"verb", "fly"}}), Error);
}

TEST_CASE("app registry") {
  AppRegistry r({{"com.a", "Alpha"}, {"com.b", ""}});
  CHECK(r.resolve("alpha") == "com.a");
  CHECK(r.resolve("com.b") == "com.b");
  CHECK_FALSE(r.resolve("beta"));
  CHECK(r.app_string() == "Alpha, com.b");
  r.add({"com.a", "Dup"});
  CHECK(r.apps().size() == 2);
}
