#include "mobench/env.hpp"

#include <algorithm>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

std::vector<Constraint> check_constraints(const CanonicalAction& a, const SnapshotState& pre,
                                          const SnapshotState& post, const TaskSpec& task) {
  std::vector<Constraint> out;
  for (const auto& c : task.constraints) {
    bool violated = false;
    switch (c.level) {
      case ConstraintLevel::app:
        violated = (a.verb == Verb::start_app && a.target == c.subject) ||
                   (post.app == c.subject && pre.app != c.subject);
        break;
      case ConstraintLevel::page:
        violated = post.page_tag == c.subject && pre.page_tag != c.subject;
        break;
      case ConstraintLevel::component:
        violated = is_component_verb(a.verb) && a.target == c.subject;
        break;
    }
    if (violated) out.push_back(c);
  }
  return out;
}

Environment::Environment(std::shared_ptr<const SnapshotGraph> graph, EnvPolicy policy)
    : graph_(std::move(graph)), policy_(policy) {}

ResetResult Environment::reset(const TaskSpec& task) {
  task_ = &task;
  current_ = graph_->initial_state();
  registry_ = graph_->apps();
  status_ = DeviceStatus{};
  status_.nav_stack = {current_};
  for (const auto& app : registry_.apps()) status_.installed.push_back(app.package);
  steps_ = 0;
  max_steps_ = task.max_steps;
  terminal_ = Terminal::running;

  ResetResult r;
  r.observation = current_state().rendered;
  r.status = status_;
  for (const auto& app : task.apps) {
    if (!registry_.resolve(app)) r.warnings.push_back("task app '" + app + "' is not in the registry");
  }
  return r;
}

void Environment::move_to(const std::string& next) {
  current_ = next;
  if (status_.nav_stack.empty() || status_.nav_stack.back() != next) status_.nav_stack.push_back(next);
}

StepResult Environment::finish_step(StepInfo info) {
  info.step_index = steps_;
  info.state_id = current_;
  if (terminal_ == Terminal::running && steps_ >= max_steps_) terminal_ = Terminal::budget_exhausted;
  info.terminal = terminal_;
  StepResult r;
  r.observation = current_state().rendered;
  r.done = terminal_ != Terminal::running;
  r.info = std::move(info);
  return r;
}

StepResult Environment::skip_step() {
  if (done()) throw Error(Errc::episode_closed, "episode already finished");
  ++steps_;
  return finish_step({});
}

StepResult Environment::step(const CanonicalAction& a) {
  if (done()) throw Error(Errc::episode_closed, "episode already finished");
  ++steps_;
  const std::string pre = current_;
  StepInfo info;

  auto lookup = [&]() {
    if (auto next = graph_->successor(current_, a)) {
      move_to(*next);
      return;
    }
    if (policy_ == EnvPolicy::strict) {
      terminal_ = Terminal::error;
      throw Error(Errc::unknown_transition, "no edge for " + std::string(verb_name(a.verb)) + " " + a.target +
                                                " from state " + current_);
    }
    info.unknown_transition = true;
  };

  switch (a.verb) {
    case Verb::finish:
      terminal_ = Terminal::finished;
      break;
    case Verb::press_back:
      if (auto next = graph_->successor(current_, a)) {
        if (status_.nav_stack.size() > 1) status_.nav_stack.pop_back();
        move_to(*next);
      } else if (status_.nav_stack.size() > 1) {
        status_.nav_stack.pop_back();
        current_ = status_.nav_stack.back();
      }
      break;
    case Verb::press_home:
      current_ = graph_->initial_state();
      status_.nav_stack = {current_};
      break;
    case Verb::install_app:
      registry_.add({a.target, ""});
      if (std::find(status_.installed.begin(), status_.installed.end(), a.target) == status_.installed.end()) {
        status_.installed.push_back(a.target);
      }
      break;
    case Verb::screen_on: status_.screen_on = true; break;
    case Verb::screen_off: status_.screen_on = false; break;
    case Verb::volume_up: status_.volume = Volume::up_adjusted; break;
    case Verb::volume_down: status_.volume = Volume::down_adjusted; break;
    case Verb::volume_mute: status_.volume = Volume::muted; break;
    case Verb::set_orientation:
      status_.orientation = a.payload == "horizontal" ? Orientation::horizontal : Orientation::vertical;
      break;
    case Verb::screenshot:
      break;
    default:
      lookup();
      break;
  }

  if (task_) info.violations = check_constraints(a, graph_->state(pre), current_state(), *task_);
  return finish_step(std::move(info));
}

ReplayReport replay(std::shared_ptr<const SnapshotGraph> graph, const TaskSpec& task,
                    std::span<const CanonicalAction> gold) {
  ReplayReport report;
  Environment env(graph, EnvPolicy::lenient);
  env.reset(task);
  env.set_max_steps(std::max(task.max_steps, gold.size() + 1));
  auto& traj = report.trajectory;
  traj.task_id = task.id;
  traj.agent = "replay";
  traj.max_steps = env.max_steps();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    TrajectoryStep s;
    s.index = i + 1;
    s.state_id = env.current_state().id;
    s.observation = env.current_state().rendered;
    s.observation_hash = hex64(fnv1a64(s.observation));
    s.action = gold[i];
    const auto r = env.step(gold[i]);
    s.unknown_transition = r.info.unknown_transition;
    s.violations = r.info.violations;
    s.next_state = r.info.state_id;
    s.status = env.status();
    if (s.unknown_transition && !report.first_mismatch) report.first_mismatch = i;
    traj.steps.push_back(std::move(s));
    if (r.done) break;
  }
  traj.terminal = gold.empty() ? Terminal::finished_degenerate : Terminal::finished;
  traj.final_state = env.current_state().id;
  report.final_state = traj.final_state;
  return report;
}

}  // namespace mobench
