#include <doctest.h>

#include "mobench/agent.hpp"
#include "mobench/error.hpp"
#include "mobench/judge.hpp"
#include "mobench/report.hpp"
#include "support.hpp"

using namespace mobench;

namespace {

class CountingJudge : public Judge {
 public:
  explicit CountingJudge(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string reply(const std::string& prompt, const Trajectory&, const TaskSpec*) override {
    last_prompt = prompt;
    return replies_[std::min(calls++, replies_.size() - 1)];
  }
  std::string label() const override { return "counting"; }
  std::size_t calls = 0;
  std::string last_prompt;

 private:
  std::vector<std::string> replies_;
};

std::vector<TaskScore> score_agent(Agent& agent, Judge& judge) {
  Environment env(testsupport::suite_graph());
  std::vector<TaskScore> out;
  for (const auto& t : testsupport::suite_tasks()) out.push_back(score_task(t, {run_episode(agent, env, t)}, judge));
  return out;
}

}  // namespace

TEST_CASE("parse_verdict") {
  CHECK(parse_verdict("Yes") == true);
  CHECK(parse_verdict("  yes.") == true);
  CHECK(parse_verdict("**No**") == false);
  CHECK(parse_verdict("'NO'") == false);
  CHECK_FALSE(parse_verdict("Maybe"));
  CHECK_FALSE(parse_verdict(""));
  CHECK_FALSE(parse_verdict("Yesterday"));
  CHECK_FALSE(parse_verdict("1. Yes"));
}

TEST_CASE("judge prompt fills both goal slots") {
  auto p = judge_prompt("Call Bob.", "Step 1:\n...");
  CHECK(p.find("The goal is \nCall Bob., \n") != std::string::npos);
  CHECK(p.find("indicate the achievement of the goal: Call Bob..\n") != std::string::npos);
  CHECK(p.find("Step 1:\n...") != std::string::npos);
  CHECK(p.find("{goal}") == std::string::npos);
  CHECK(p.find("{traj}") == std::string::npos);
  CHECK(p.find("Only output 'Yes' or 'No', no other words.") != std::string::npos);
}

TEST_CASE("trajectory excerpt keeps first and last steps within budget") {
  ScriptAgent s("s", {{"", {"#swipe-up#"}}});
  Environment env(testsupport::suite_graph());
  auto t = run_episode(s, env, testsupport::suite_task("gmail-open-settings"));
  REQUIRE(t.steps.size() == 15);
  auto full = trajectory_excerpt(t, 1000000);
  CHECK(full.find("Step 1:\n") == 0);
  CHECK(full.find("...") == std::string::npos);
  auto cut = trajectory_excerpt(t, 400);
  CHECK(cut.find("Step 1:\n") == 0);
  CHECK(cut.find("Step 15:\n") != std::string::npos);
  CHECK(cut.find("...\n") != std::string::npos);
  CHECK(token_count(cut) < token_count(full));
}

TEST_CASE("success_rate retries once on an unparseable reply") {
  GoldAgent gold;
  Environment env(testsupport::suite_graph());
  const auto& task = testsupport::suite_task("weather-paris");
  auto t = run_episode(gold, env, task);
  CountingJudge junk_then_yes({"perhaps", "Yes"});
  auto v = success_rate(t, task.instruction, junk_then_yes, &task);
  CHECK(v.success);
  CHECK_FALSE(v.nonconforming);
  CHECK(junk_then_yes.calls == 2);
  CHECK(junk_then_yes.last_prompt.find("Check today's weather in Paris.") != std::string::npos);
  CountingJudge junk({"perhaps"});
  auto w = success_rate(t, task.instruction, junk, &task);
  CHECK_FALSE(w.success);
  CHECK(w.nonconforming);
  CHECK(junk.calls == 2);
  OracleJudge oracle;
  CHECK(success_rate(t, task.instruction, oracle, &task).success);
  PrefixAgent half("half", 0.5);
  CHECK_FALSE(success_rate(run_episode(half, env, task), task.instruction, oracle, &task).success);
}

TEST_CASE("gold agent scores perfectly") {
  GoldAgent gold;
  ScriptedJudge yes("Yes");
  for (const auto& s : score_agent(gold, yes)) {
    CAPTURE(s.task_id);
    CHECK(s.tr == doctest::Approx(1.0));
    CHECK(s.tcr == 1.0);
    CHECK(s.rrr == 1.0);
    CHECK(s.sr == 1);
    CHECK(s.invalid_format == 0.0);
    CHECK(s.invalid_action == 0.0);
    CHECK(s.repeat_actions == 0.0);
    CHECK(s.operation_logic == 1.0);
    CHECK(s.completion_aware == true);
    CHECK(s.violations == 0);
    CHECK_FALSE(s.rrr_clamped);
  }
}

TEST_CASE("report build, json round trip, text and csv") {
  GoldAgent gold;
  PrefixAgent half("half", 0.5);
  OracleJudge oracle;
  auto scores = score_agent(gold, oracle);
  auto more = score_agent(half, oracle);
  scores.insert(scores.end(), more.begin(), more.end());
  auto g = testsupport::suite_graph();
  auto complexity = ir_oc({g.get()}, testsupport::suite_tasks());
  auto r = build_report(scores, complexity, {}, "oracle");
  REQUIRE(r.agents.size() == 2);
  CHECK(r.agents[0].agent == "gold");
  CHECK(r.agents[1].agent == "half");
  CHECK(r.agents[0].sr == 1.0);
  CHECK(r.agents[1].sr == 0.0);
  CHECK(r.agents[0].tasks == 11);
  CHECK(r.agents[1].tcr < 1.0);
  CHECK(r.agents[0].violation_ratio.at(ConstraintLevel::app) == 0.0);
  CHECK(r.tasks.front().agent == "gold");
  CHECK(std::is_sorted(r.tasks.begin(), r.tasks.begin() + 11,
                       [](const auto& a, const auto& b) { return a.task_id < b.task_id; }));
  CHECK(!r.apps.empty());

  auto j = report_to_json(r);
  auto back = report_from_json(nlohmann::json::parse(j.dump()));
  CHECK(report_to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{\"tasks\": 3}")), Error);

  auto text = report_text(r);
  CHECK(text.find("gold") != std::string::npos);
  CHECK(text.find("half") != std::string::npos);
  auto csv = report_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 23);

  auto cmp = compare_reports({r});
  CHECK(cmp.dimensions.rows.size() == 2);
  CHECK(cmp.correlations.size() == 2);
  auto ct = comparison_text(cmp);
  CHECK(ct.find("understanding") != std::string::npos);
  CHECK(comparison_to_json(cmp).contains("dimensions"));
}

TEST_CASE("reflexion scoring across trials") {
  const auto& task = testsupport::suite_task("weather-paris");
  ScriptAgent fail("fail", {{"", {"#finish#"}}});
  GoldAgent gold;
  Environment env(testsupport::suite_graph());
  auto t0 = run_episode(fail, env, task);
  EpisodeOptions o;
  o.trial = 1;
  auto t1 = run_episode(gold, env, task, o);
  OracleJudge oracle;
  auto s = score_task(task, {t0, t1}, oracle);
  CHECK(s.sr_trials == std::vector<int>{0, 1});
  CHECK(s.reflexion_at_k == 1.0);
  CHECK(s.sr == 0);
  CHECK(s.tr == 0.0);
  auto single = score_task(task, {t1}, oracle, {.gamma = 0.9, .normalized = true, .k = 3, .excerpt_budget = 3000});
  CHECK(single.reflexion_at_k == 0.0);
  auto no_k = score_task(task, {t1}, oracle);
  CHECK_FALSE(no_k.reflexion_at_k);
}
