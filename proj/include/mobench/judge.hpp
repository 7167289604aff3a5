#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobench/backend.hpp"
#include "mobench/task.hpp"
#include "mobench/tokenizer.hpp"
#include "mobench/trajectory.hpp"

namespace mobench {

class Judge {
 public:
  virtual ~Judge() = default;
  // Raw verdict text for a filled judge prompt. task may be null.
  virtual std::string reply(const std::string& prompt, const Trajectory& traj, const TaskSpec* task) = 0;
  virtual std::string label() const = 0;
};

// Fixed reply, optionally overridden per task id.
class ScriptedJudge : public Judge {
 public:
  explicit ScriptedJudge(std::string reply, std::map<std::string, std::string> per_task = {})
      : reply_(std::move(reply)), per_task_(std::move(per_task)) {}
  std::string reply(const std::string& prompt, const Trajectory& traj, const TaskSpec* task) override;
  std::string label() const override { return "scripted"; }

 private:
  std::string reply_;
  std::map<std::string, std::string> per_task_;
};

// "Yes" exactly when the trajectory matched every gold action.
class OracleJudge : public Judge {
 public:
  std::string reply(const std::string& prompt, const Trajectory& traj, const TaskSpec* task) override;
  std::string label() const override { return "oracle"; }
};

class BackendJudge : public Judge {
 public:
  explicit BackendJudge(AgentBackend& backend) : backend_(backend) {}
  std::string reply(const std::string& prompt, const Trajectory&, const TaskSpec*) override {
    return backend_.complete(prompt);
  }
  std::string label() const override { return backend_.label(); }

 private:
  AgentBackend& backend_;
};

// Leading word, case-insensitive: yes -> true, no -> false, else nullopt.
std::optional<bool> parse_verdict(std::string_view reply);

// "Step i:" blocks with the state and the issued action. When the whole run
// exceeds token_budget, keeps the first and last steps plus evenly spaced
// middle steps.
std::string trajectory_excerpt(const Trajectory& traj, std::size_t token_budget = 3000,
                               const TokenCounter& counter = default_token_counter());
std::string judge_prompt(std::string_view goal, std::string_view excerpt);

struct Verdict {
  bool success = false;
  bool nonconforming = false;  // two unparseable replies
};

// One retry on an unparseable reply, then failure with the flag set.
Verdict success_rate(const Trajectory& traj, std::string_view goal, Judge& judge, const TaskSpec* task = nullptr,
                     std::size_t excerpt_budget = 3000);

}  // namespace mobench
