#include "mobench/judge.hpp"

#include <cctype>

#include "mobench/metrics.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

constexpr std::string_view kJudgeTemplate =
    "You can access to the actions and phone states at some steps during executing a specific task on a phone. "
    "Check if the given phone states and actions indicate the achievement of a goal. The phone state is "
    "represented as structured texts, with each entry denoting a UI component along with its content and "
    "function description. \n"
    "\n"
    "The goal is \n"
    "{goal}, \n"
    "\n"
    "the actions and states at some steps are:\n"
    "{traj}\n"
    "\n"
    "Please check if the above trajectory indicate the achievement of the goal: {goal}.\n"
    "Only output 'Yes' or 'No', no other words.";

std::string step_block(const TrajectoryStep& s) {
  std::string out = "Step " + std::to_string(s.index) + ":\nState:\n" + s.observation;
  if (!ends_with(out, "\n")) out += "\n";
  out += "Action: ";
  if (s.parsed) {
    out += format_action(*s.parsed);
    if (s.invalid_reason) out += " (invalid: " + *s.invalid_reason + ")";
  } else {
    out += "(unparseable output)";
  }
  out += "\n";
  return out;
}

std::string join_blocks(const std::vector<std::string>& blocks, const std::vector<std::size_t>& picks) {
  std::string out;
  std::size_t prev = 0;
  for (std::size_t n = 0; n < picks.size(); ++n) {
    if (n > 0 && picks[n] != prev + 1) out += "...\n";
    out += blocks[picks[n]];
    prev = picks[n];
  }
  return out;
}

std::vector<std::size_t> spaced(std::size_t total, std::size_t count) {
  std::vector<std::size_t> out;
  if (total == 0 || count == 0) return out;
  if (count == 1) return {total - 1};
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t idx = (i * (total - 1) + (count - 1) / 2) / (count - 1);
    if (out.empty() || out.back() != idx) out.push_back(idx);
  }
  return out;
}

}  // namespace

std::string ScriptedJudge::reply(const std::string&, const Trajectory& traj, const TaskSpec*) {
  if (auto it = per_task_.find(traj.task_id); it != per_task_.end()) return it->second;
  return reply_;
}

std::string OracleJudge::reply(const std::string&, const Trajectory& traj, const TaskSpec* task) {
  if (task == nullptr || task->gold_actions.empty()) return "No";
  const auto exec = traj.executed_actions();
  const auto al = lcs_align(std::span<const CanonicalAction>(task->gold_actions), std::span<const CanonicalAction>(exec));
  return al.length() == task->gold_actions.size() ? "Yes" : "No";
}

std::optional<bool> parse_verdict(std::string_view reply) {
  std::size_t i = 0;
  while (i < reply.size() && !std::isalpha(static_cast<unsigned char>(reply[i]))) {
    if (!std::isspace(static_cast<unsigned char>(reply[i])) && reply[i] != '\'' && reply[i] != '"' && reply[i] != '*') {
      return std::nullopt;
    }
    ++i;
  }
  std::size_t j = i;
  while (j < reply.size() && std::isalpha(static_cast<unsigned char>(reply[j]))) ++j;
  const auto word = to_lower(reply.substr(i, j - i));
  if (word == "yes") return true;
  if (word == "no") return false;
  return std::nullopt;
}

std::string trajectory_excerpt(const Trajectory& traj, std::size_t token_budget, const TokenCounter& counter) {
  std::vector<std::string> blocks;
  for (const auto& s : traj.steps) blocks.push_back(step_block(s));
  std::vector<std::size_t> all(blocks.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto text = join_blocks(blocks, all);
  if (counter(text) <= token_budget || blocks.size() <= 2) return text;

  std::string best = join_blocks(blocks, spaced(blocks.size(), 2));
  for (std::size_t count = 3; count < blocks.size(); ++count) {
    auto candidate = join_blocks(blocks, spaced(blocks.size(), count));
    if (counter(candidate) > token_budget) break;
    best = std::move(candidate);
  }
  return best;
}

std::string judge_prompt(std::string_view goal, std::string_view excerpt) {
  auto s = replace_all(std::string(kJudgeTemplate), "{goal}", goal);
  return replace_all(std::move(s), "{traj}", excerpt);
}

Verdict success_rate(const Trajectory& traj, std::string_view goal, Judge& judge, const TaskSpec* task,
                     std::size_t excerpt_budget) {
  const auto prompt = judge_prompt(goal, trajectory_excerpt(traj, excerpt_budget));
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (auto v = parse_verdict(judge.reply(prompt, traj, task))) return {*v, false};
  }
  return {false, true};
}

}  // namespace mobench
