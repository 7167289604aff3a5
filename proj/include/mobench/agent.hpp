#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobench/backend.hpp"
#include "mobench/env.hpp"
#include "mobench/judge.hpp"
#include "mobench/prompt.hpp"

namespace mobench {

struct DecisionContext {
  const TaskSpec& task;
  const std::string& prompt;
  const SnapshotState& state;  // screen the agent is looking at
  std::size_t step = 1;        // 1-based step about to be taken
  std::size_t trial = 0;
};

// Agents hold no per-episode state so one instance can serve parallel episodes.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string act(const DecisionContext& ctx) = 0;
  virtual std::string label() const = 0;
};

class LlmAgent : public Agent {
 public:
  explicit LlmAgent(AgentBackend& backend) : backend_(backend) {}
  std::string act(const DecisionContext& ctx) override { return backend_.complete(ctx.prompt); }
  std::string label() const override { return backend_.label(); }

 private:
  AgentBackend& backend_;
};

// Wire text for a canonical action on the given screen; component targets are
// mapped back to the node id showing that path (the path itself when absent).
std::string wire_action(const CanonicalAction& a, const SnapshotState& state);

// Issues the first floor(fraction * L) gold actions, then finish.
class PrefixAgent : public Agent {
 public:
  PrefixAgent(std::string label, double fraction) : label_(std::move(label)), fraction_(fraction) {}
  std::string act(const DecisionContext& ctx) override;
  std::string label() const override { return label_; }

 private:
  std::string label_;
  double fraction_;
};

class GoldAgent : public PrefixAgent {
 public:
  explicit GoldAgent(std::string label = "gold") : PrefixAgent(std::move(label), 1.0) {}
};

// Canonical actions per task id (fallback plan under ""), issued in order on
// whatever screen is showing, then finish.
class PlanAgent : public Agent {
 public:
  PlanAgent(std::string label, std::map<std::string, std::vector<CanonicalAction>> plans)
      : label_(std::move(label)), plans_(std::move(plans)) {}
  std::string act(const DecisionContext& ctx) override;
  std::string label() const override { return label_; }

 private:
  std::string label_;
  std::map<std::string, std::vector<CanonicalAction>> plans_;
};

// Raw outputs per task id (fallback list under ""); step i emits entry i-1,
// repeating the last one.
class ScriptAgent : public Agent {
 public:
  ScriptAgent(std::string label, std::map<std::string, std::vector<std::string>> scripts)
      : label_(std::move(label)), scripts_(std::move(scripts)) {}
  std::string act(const DecisionContext& ctx) override;
  std::string label() const override { return label_; }

 private:
  std::string label_;
  std::map<std::string, std::vector<std::string>> scripts_;
};

// Uniform over the actions valid on the current screen plus finish; the draw
// depends only on (seed, task, trial, step).
class RandomAgent : public Agent {
 public:
  RandomAgent(std::string label, std::uint64_t seed) : label_(std::move(label)), seed_(seed) {}
  std::string act(const DecisionContext& ctx) override;
  std::string label() const override { return label_; }

 private:
  std::string label_;
  std::uint64_t seed_;
};

class VisitCounters {
 public:
  void arrive(const std::string& state_hash) { ++m_[state_hash]; }
  void issue(const std::string& state_hash, const std::string& key, const std::string& display);
  std::size_t visits(const std::string& state_hash) const;
  std::size_t issued(const std::string& state_hash, const std::string& key) const;

  struct Issued {
    std::string key;
    std::string display;
    std::size_t count = 0;
  };
  // Actions issued at the state, in first-issue order.
  std::vector<Issued> actions_at(const std::string& state_hash) const;

 private:
  std::map<std::string, std::size_t> m_;
  std::map<std::string, std::vector<Issued>> n_;
};

// "You have already been in the current state M times, and taken action A for N times."
std::string exploration_hint(const VisitCounters& counters, const std::string& state_hash);

struct EpisodeOptions {
  std::size_t trial = 0;
  bool exploration = false;
  std::size_t context_limit = 4096;
  std::string date = "2024-01-01";
  std::vector<std::string> reflections;
  std::vector<std::string> few_shots = default_few_shot_examples();
  std::function<void(std::size_t step, const std::string& prompt)> on_prompt;
  TokenCounter counter = default_token_counter();
};

// Resets env with the task and runs until finish, budget exhaustion or error.
Trajectory run_episode(Agent& agent, Environment& env, const TaskSpec& task, const EpisodeOptions& options = {});

// Step summary used in the reflection prompt.
std::string trajectory_summary(const Trajectory& traj);

struct LoopResult {
  std::vector<Trajectory> trials;
  std::vector<std::string> reflections;
  std::vector<int> success;  // per executed trial
};

// Stops at the first successful trial; otherwise runs K+1 trials, reflecting
// after each failure except the last.
LoopResult reflexion_loop(Agent& agent, AgentBackend& reflector, Environment& env, const TaskSpec& task,
                          std::size_t k, Judge& judge, const EpisodeOptions& options = {});
LoopResult reexecute_loop(Agent& agent, Environment& env, const TaskSpec& task, std::size_t k, Judge& judge,
                          const EpisodeOptions& options = {});

}  // namespace mobench
