#include <doctest.h>

#include <set>

#include "mobench/backend.hpp"
#include "mobench/error.hpp"
#include "mobench/taskgen.hpp"
#include "support.hpp"

using namespace mobench;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::io_error;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TaskCandidate candidate(std::string instruction, std::vector<std::string> apps = {"Gmail"}) {
  TaskCandidate c;
  c.instruction = std::move(instruction);
  c.apps = std::move(apps);
  c.functionality = "Compose";
  return c;
}

}  // namespace

TEST_CASE("query templates") {
  auto one = build_queries({"Gmail"});
  CHECK(one.queries.size() == 11);
  CHECK(contains(one.queries, "how to use Gmail"));
  auto two = build_queries({"Gmail", "Calendar"});
  CHECK(two.queries.size() == 6);
  CHECK(contains(two.queries, "Gmail and Calendar collaboration features"));
  CHECK(contains(two.queries, "How to use Gmail and Calendar together for tasks"));
  CHECK(contains(two.queries, "Productivity tips with Gmail and Calendar"));
  CHECK(code_of([] { build_queries({}); }) == Errc::arity_error);
  CHECK(code_of([] { build_queries({"a", "b", "c"}); }) == Errc::arity_error);
}

TEST_CASE("bm25 retrieval over the bundled corpus") {
  auto index = load_corpus(testsupport::data_dir() / "corpus" / "gmail");
  CHECK(index.size() == 10);
  auto hits = index.search("schedule a message to send later", 3);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0].doc->id == "10_schedule");
  CHECK(hits[0].score >= hits[1].score);
  CHECK(hits[1].score >= hits[2].score);
  auto star = index.search("star", 1);
  REQUIRE(star.size() == 1);
  CHECK(star[0].doc->title == "Star important messages");
  CHECK(index.search("star", 0).empty());
  CHECK(code_of([] { load_corpus("/nonexistent/corpus"); }) == Errc::io_error);

  RetrievalIndex tie;
  tie.add({"b", "B", "same words"});
  tie.add({"a", "A", "same words"});
  auto t = tie.search("same", 2);
  REQUIRE(t.size() == 2);
  CHECK(t[0].doc->id == "a");
}

TEST_CASE("functionality extraction") {
  auto index = load_corpus(testsupport::data_dir() / "corpus" / "gmail");
  FunctionBackend titles("titles", [](const std::string& prompt) {
    std::string out;
    for (const auto& line : split(prompt, '\n')) {
      if (starts_with(line, "Document ")) out += "- " + line.substr(line.find(": ") + 2) + "\n";
    }
    return out;
  });
  auto features = extract_functionalities({"Gmail"}, index, titles, 2);
  std::set<std::string> distinct(features.begin(), features.end());
  CHECK(distinct.size() == features.size());
  for (const auto& f : features) {
    bool is_title = false;
    for (const auto& d : index.documents()) is_title |= d.title == f;
    CHECK_MESSAGE(is_title, f);
  }
  CHECK(extract_functionalities({"Gmail"}, index, titles, 0).empty());
  RetrievalIndex empty;
  CHECK(code_of([&] { extract_functionalities({"Gmail"}, empty, titles, 2); }) == Errc::empty_index);

  TemplateTaskgenBackend tmpl;
  auto golden = split(trim(read_file(testsupport::data_dir() / "golden" / "gmail_functionalities.txt")), '\n');
  CHECK(extract_functionalities({"Gmail"}, index, tmpl, 3) == golden);
}

TEST_CASE("instruction generation") {
  auto p = instruction_prompt("Gmail", "Star important messages");
  CHECK(p.rfind("You are a smart task creator for a smartphone intelligent assistant.", 0) == 0);
  CHECK(p.find("Send the first draft email., \n") != std::string::npos);
  CHECK(p.find("{app}") == std::string::npos);
  CHECK(p.find("The Gmail APP's feature description is: \nStar important messages") != std::string::npos);

  ScriptedBackend exemplars("ex", {"Compose an email with the subject <email subject> and the message content "
                                   "<email content> to be sent to <email address> using Gmail., Send the first "
                                   "draft email., Open the latest email from <email address> in Gmail., etc."});
  auto out = generate_instructions("Gmail", "Compose", exemplars);
  CHECK(contains(out, "Send the first draft email."));
  CHECK(contains(out, "Open the latest email from <email address> in Gmail."));
  CHECK(out.size() == 3);
  ScriptedBackend empty("e", {"   "});
  CHECK(code_of([&] { generate_instructions("Gmail", "Compose", empty); }) == Errc::empty_response);

  CHECK(split_instructions("1. Open Gmail\n2. Star it\n") == std::vector<std::string>{"Open Gmail.", "Star it."});
  CHECK(split_instructions("Open Gmail, Star it") == std::vector<std::string>{"Open Gmail.", "Star it."});
}

TEST_CASE("evolution lineage") {
  TemplateTaskgenBackend tmpl;
  std::vector<TaskCandidate> seed = {candidate("Open the latest email from <email address> in Gmail."),
                                     candidate("Open Gmail settings.")};
  auto one = evolve(seed, tmpl, {EvolveMode::in_depth}, 1);
  CHECK(one.size() == 4);
  for (std::size_t i = 2; i < one.size(); ++i) {
    CHECK(one[i].round == 1);
    CHECK(one[i].modes == std::vector<EvolveMode>{EvolveMode::in_depth});
    REQUIRE(one[i].parent);
    CHECK(one[*one[i].parent].round == 0);
    CHECK(one[i].status == CandidateStatus::evolved);
  }
  CHECK(one[2].instruction.find("<email address>") != std::string::npos);

  auto two = evolve(seed, tmpl, {EvolveMode::in_depth, EvolveMode::in_breadth}, 2);
  CHECK(two.size() <= 3 * seed.size());
  for (const auto& c : two) {
    CHECK(c.round <= 2);
    CHECK(c.modes.size() == c.round);
    if (c.round == 2) CHECK(c.modes == std::vector<EvolveMode>{EvolveMode::in_depth, EvolveMode::in_breadth});
    std::size_t hops = 0;
    const TaskCandidate* cur = &c;
    while (cur->parent) cur = &two[*cur->parent], ++hops;
    CHECK(hops == c.round);
    CHECK(cur->round == 0);
  }

  ScriptedBackend drops("drops", {"Open the latest email in Gmail."});
  std::vector<TaskCandidate> ph = {candidate("Open the latest email from <email address> in Gmail.")};
  CHECK(evolve(ph, drops, {EvolveMode::in_depth}, 1).size() == 1);
  CHECK(evolve_mode_from_name("in-breadth") == EvolveMode::in_breadth);
  CHECK(evolve_mode_name(EvolveMode::in_depth) == "in-depth");
  CHECK(evolve_prompt(EvolveMode::in_depth, "Gmail", "Open Gmail.").find("Instruction: Open Gmail.") !=
        std::string::npos);
}

TEST_CASE("jaccard dedup") {
  const std::string a = "Send an email to <email address> with the subject Hello and the body See you at noon";
  const std::string b = "Send an email to <recipient name> with the subject Hello and the body See you at noon";
  auto ta = instruction_tokens(a);
  CHECK(contains(ta, "<email address>"));
  CHECK(jaccard(a, b) == doctest::Approx(14.0 / 16.0));
  CHECK(jaccard(a, a) == 1.0);
  CHECK(jaccard("open gmail", "call bob") == 0.0);

  std::vector<TaskCandidate> pair = {candidate(a), candidate(b)};
  dedup_filter(pair, 0.8);
  CHECK(pair[1].status == CandidateStatus::filtered_out);
  pair = {candidate(a), candidate(b)};
  dedup_filter(pair, 0.95);
  CHECK(pair[1].status != CandidateStatus::filtered_out);
  std::vector<TaskCandidate> same = {candidate("Open Gmail."), candidate("Open Gmail.")};
  dedup_filter(same, 0.99);
  CHECK(same[1].status == CandidateStatus::filtered_out);
  std::vector<TaskCandidate> disjoint = {candidate("Open Gmail."), candidate("Call Bob now.")};
  dedup_filter(disjoint, 0.8);
  CHECK(disjoint[1].status != CandidateStatus::filtered_out);
}

TEST_CASE("export tasks") {
  auto dir = testsupport::scratch_dir("export");
  std::vector<TaskCandidate> c = {candidate("Open Gmail."), candidate("Plan a trip with <city>.", {"Gmail", "Calendar"})};
  c.push_back(candidate("Open Gmail."));
  c.back().status = CandidateStatus::filtered_out;
  export_tasks(c, dir / "tasks.json");
  auto first = read_file(dir / "tasks.json");
  auto doc = nlohmann::json::parse(first);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["max_steps"] == 15);
  CHECK(doc[1]["max_steps"] == 30);
  CHECK(doc[1]["instruction"] == "Plan a trip with <city>.");
  CHECK(doc[0]["gold_actions"].empty());
  CHECK(c[0].status == CandidateStatus::exported);
  CHECK(c[2].status == CandidateStatus::filtered_out);
  CHECK(load_task_file(dir / "tasks.json", true).size() == 2);

  std::vector<TaskCandidate> again = {candidate("Open Gmail."), candidate("Plan a trip with <city>.", {"Gmail", "Calendar"})};
  again.push_back(candidate("Open Gmail."));
  again.back().status = CandidateStatus::filtered_out;
  export_tasks(again, dir / "tasks2.json");
  CHECK(read_file(dir / "tasks2.json") == first);

  std::vector<TaskCandidate> none;
  export_tasks(none, dir / "empty.json");
  CHECK(nlohmann::json::parse(read_file(dir / "empty.json")) == nlohmann::json::array());
  CHECK(code_of([&] { export_tasks(none, "/proc/forbidden/x.json"); }) == Errc::io_error);
  std::filesystem::remove_all(dir);
}
