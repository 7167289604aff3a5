#include "mobench/agent.hpp"

#include <cmath>
#include <random>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

std::string wire_action(const CanonicalAction& c, const SnapshotState& state) {
  Action a;
  a.verb = c.verb;
  a.verb_text = std::string(verb_wire_name(c.verb));
  if (!c.target.empty()) {
    if (is_component_verb(c.verb)) {
      a.target = state.ids.id_of(c.target).value_or(c.target);
    } else {
      a.target = c.target;
    }
  }
  if (!c.payload.empty() || c.verb == Verb::set_text) a.payload = c.payload;
  return format_action(a);
}

std::string PrefixAgent::act(const DecisionContext& ctx) {
  const auto& gold = ctx.task.gold_actions;
  const auto n = static_cast<std::size_t>(std::floor(fraction_ * static_cast<double>(gold.size()) + 1e-9));
  if (ctx.step <= n && ctx.step <= gold.size()) {
    return "Thought: following the plan.\nAction: " + wire_action(gold[ctx.step - 1], ctx.state);
  }
  return "Thought: the task is complete.\nAction: #finish#";
}

std::string PlanAgent::act(const DecisionContext& ctx) {
  auto it = plans_.find(ctx.task.id);
  if (it == plans_.end()) it = plans_.find("");
  if (it != plans_.end() && ctx.step <= it->second.size()) {
    return "Thought: next planned step.\nAction: " + wire_action(it->second[ctx.step - 1], ctx.state);
  }
  return "Thought: the plan is done.\nAction: #finish#";
}

std::string ScriptAgent::act(const DecisionContext& ctx) {
  auto it = scripts_.find(ctx.task.id);
  if (it == scripts_.end()) it = scripts_.find("");
  if (it == scripts_.end() || it->second.empty()) {
    throw Error(Errc::backend_unavailable, label_ + ": no script for task " + ctx.task.id);
  }
  const auto& lines = it->second;
  return lines[std::min(ctx.step, lines.size()) - 1];
}

std::string RandomAgent::act(const DecisionContext& ctx) {
  std::vector<std::string> options;
  for (const auto& e : ctx.state.observation.entries) {
    if (e.flags.has(Capability::clickable)) options.push_back("#click [" + e.node_id + "]#");
    if (e.flags.has(Capability::long_clickable)) options.push_back("#long-click [" + e.node_id + "]#");
    if (e.flags.has(Capability::editable)) options.push_back("#set-text [" + e.node_id + "] [test]#");
  }
  for (const char* v : {"#swipe-up#", "#swipe-down#", "#press-back#", "#finish#"}) options.emplace_back(v);
  const std::string key = std::to_string(seed_) + "|" + ctx.task.id + "|" + std::to_string(ctx.trial) + "|" +
                          std::to_string(ctx.step);
  std::mt19937_64 rng(fnv1a64(key));
  return "Thought: trying something.\nAction: " + options[rng() % options.size()];
}

void VisitCounters::issue(const std::string& state_hash, const std::string& key, const std::string& display) {
  auto& list = n_[state_hash];
  for (auto& item : list) {
    if (item.key == key) {
      ++item.count;
      return;
    }
  }
  list.push_back({key, display, 1});
}

std::size_t VisitCounters::visits(const std::string& state_hash) const {
  auto it = m_.find(state_hash);
  return it == m_.end() ? 0 : it->second;
}

std::size_t VisitCounters::issued(const std::string& state_hash, const std::string& key) const {
  auto it = n_.find(state_hash);
  if (it == n_.end()) return 0;
  for (const auto& item : it->second) {
    if (item.key == key) return item.count;
  }
  return 0;
}

std::vector<VisitCounters::Issued> VisitCounters::actions_at(const std::string& state_hash) const {
  auto it = n_.find(state_hash);
  return it == n_.end() ? std::vector<Issued>{} : it->second;
}

std::string exploration_hint(const VisitCounters& counters, const std::string& state_hash) {
  std::string out = "You have already been in the current state " + std::to_string(counters.visits(state_hash)) +
                    " times";
  for (const auto& item : counters.actions_at(state_hash)) {
    out += ", and taken action " + item.display + " for " + std::to_string(item.count) + " times";
  }
  out += ".";
  return out;
}

namespace {

std::string history_action(const TrajectoryStep& s) {
  if (s.parsed) return format_action(*s.parsed);
  auto t = collapse_whitespace(s.raw_output);
  if (t.size() > 200) t = t.substr(0, 200) + "...";
  return t.empty() ? "(empty output)" : t;
}

}  // namespace

Trajectory run_episode(Agent& agent, Environment& env, const TaskSpec& task, const EpisodeOptions& options) {
  Trajectory traj;
  traj.task_id = task.id;
  traj.agent = agent.label();
  traj.trial = options.trial;
  traj.max_steps = task.max_steps;

  env.reset(task);
  const auto description = environment_description(env.registry().app_string(), options.date);
  VisitCounters counters;
  std::vector<HistoryItem> history;
  counters.arrive(hex64(fnv1a64(env.current_state().rendered)));

  while (!env.done()) {
    const auto& state = env.current_state();
    TrajectoryStep step;
    step.index = env.steps_taken() + 1;
    step.state_id = state.id;
    step.observation = state.rendered;
    step.observation_hash = hex64(fnv1a64(step.observation));

    PromptBundle bundle;
    bundle.environment_description = description;
    bundle.few_shot_examples = options.few_shots;
    bundle.reflections = options.reflections;
    bundle.instruction = task.instruction;
    bundle.history = history;
    bundle.current_observation = step.observation;
    bundle.context_limit = options.context_limit;
    if (options.exploration) bundle.hint = exploration_hint(counters, step.observation_hash);

    try {
      const auto prompt = build_prompt(bundle, options.counter);
      if (options.on_prompt) options.on_prompt(step.index, prompt.text);
      step.raw_output = agent.act(DecisionContext{task, prompt.text, state, step.index, options.trial});
    } catch (const Error& e) {
      if (e.code() != Errc::backend_unavailable && e.code() != Errc::irreducible_prompt) throw;
      traj.terminal = Terminal::error;
      traj.error = e.what();
      break;
    }

    auto outcome = parse_action(step.raw_output);
    std::optional<CanonicalAction> canonical;
    if (auto* fe = std::get_if<FormatError>(&outcome)) {
      step.format_error = fe->reason;
    } else {
      step.parsed = std::get<Action>(outcome);
      auto valid = validate_action(*step.parsed, state.observation, env.registry());
      if (!valid) {
        step.invalid_reason = valid.reason;
      } else {
        try {
          canonical = canonicalize(*step.parsed, state.ids, &env.registry());
        } catch (const Error& e) {
          if (e.code() != Errc::unknown_id) throw;
          step.invalid_reason = e.what();
        }
      }
    }

    if (canonical) {
      step.action = canonical;
      try {
        auto r = env.step(*canonical);
        step.unknown_transition = r.info.unknown_transition;
        step.violations = r.info.violations;
      } catch (const Error& e) {
        if (e.code() != Errc::unknown_transition) throw;
        step.unknown_transition = true;
        traj.error = e.what();
      }
      counters.issue(step.observation_hash, action_key(*canonical), format_action(*step.parsed));
      counters.arrive(hex64(fnv1a64(env.current_state().rendered)));
    } else {
      env.skip_step();
    }
    step.next_state = env.current_state().id;
    step.status = env.status();
    history.push_back({step.observation, history_action(step)});
    traj.steps.push_back(std::move(step));
  }

  if (traj.terminal != Terminal::error) traj.terminal = env.terminal();
  traj.final_state = env.current_state().id;
  return traj;
}

std::string trajectory_summary(const Trajectory& traj) {
  std::string out;
  for (const auto& s : traj.steps) {
    out += "Step " + std::to_string(s.index) + ": ";
    if (s.format_error) {
      out += "unparseable output (" + *s.format_error + ")";
    } else if (s.invalid_reason) {
      out += format_action(*s.parsed) + " was invalid (" + *s.invalid_reason + ")";
    } else if (s.parsed) {
      out += format_action(*s.parsed);
      if (s.unknown_transition) out += " had no effect";
    }
    out += "\n";
  }
  out += "Outcome: " + std::string(terminal_name(traj.terminal)) + " after " + std::to_string(traj.steps.size()) +
         " steps.\n";
  return out;
}

namespace {

LoopResult run_trials(Agent& agent, AgentBackend* reflector, Environment& env, const TaskSpec& task, std::size_t k,
                      Judge& judge, const EpisodeOptions& options) {
  LoopResult result;
  EpisodeOptions opts = options;
  for (std::size_t trial = 0; trial <= k; ++trial) {
    opts.trial = trial;
    opts.reflections = result.reflections;
    auto traj = run_episode(agent, env, task, opts);
    const auto verdict = success_rate(traj, task.instruction, judge, &task);
    result.success.push_back(verdict.success ? 1 : 0);
    result.trials.push_back(std::move(traj));
    if (verdict.success) break;
    if (reflector != nullptr && trial < k) {
      result.reflections.push_back(
          trim(reflector->complete(reflection_prompt(task.instruction, trajectory_summary(result.trials.back())))));
    }
  }
  return result;
}

}  // namespace

LoopResult reflexion_loop(Agent& agent, AgentBackend& reflector, Environment& env, const TaskSpec& task,
                          std::size_t k, Judge& judge, const EpisodeOptions& options) {
  if (k == 0) throw Error(Errc::config_error, "Reflexion needs K >= 1");
  return run_trials(agent, &reflector, env, task, k, judge, options);
}

LoopResult reexecute_loop(Agent& agent, Environment& env, const TaskSpec& task, std::size_t k, Judge& judge,
                          const EpisodeOptions& options) {
  return run_trials(agent, nullptr, env, task, k, judge, options);
}

}  // namespace mobench
