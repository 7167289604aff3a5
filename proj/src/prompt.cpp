#include "mobench/prompt.hpp"

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

constexpr std::string_view kEnvironmentTemplate =
    R"(You are an autonomous intelligent agent tasked with operating a mobile phone. You are able to assist with a wide range of tasks, from answering simple questions to planning and executing a complicated instruction with specific actions you can issue.

Here's the information you'll have:
The user's objective: This is the task you're trying to complete.
The installed APPs: These are the APPs you can operate on.
The current phone's observation: This is a simplified and structured representation of the phone view, providing key information.
The previous action and observation : There are the action you just performed and the resulted phone observation. It may be helpful to track your progress.

Solve the user's task with interleaving Observation, Thought, Action steps.
Thought can reason about the current situation.
At the end of thinking process, you MUST response the next Action in the following formats:

1. APP level Actions:
#start [app-name]#: This action start an APP specified by app name. You can ONLY issue the start operation on the following APPs:
{app-string}

2. Component level Actions:
#click [id]#: This action clicks on an element with a specific id on the APP page.
#long-click [id]#: This action long clicks on an element with a specific id on the APP page.
#set-text [id] [text]# This action set text in a text view element with a specific id on the APP page.
Note that the UI elements with 'clickable' or 'long-clickable' properties can be issued with #click#, while the elements with 'EditText' can be issued with #set-text# action.

3. System level Actions:
#swipe-up#: Scroll up the screen.
#swipe-down#: Scroll down the screen.
#swipe-left#: Swipe left the screen.
#swipe-right#: Swipe right the screen.
#press-back#: Navigate to the previously viewed page.
#press-enter#: Press enter.

4. Completion Action:
#finish [answer]#: Issue this action when you believe the task is complete. If the objective is to find a text-based answer, provide the answer in the bracket. If you believe the task is impossible to complete, provide the answer as "N/A" in the bracket.

------

Observation is the simplified and structured text representation of APP view.

To be successful, it is very important to follow the following rules:
1. You MUST only issue ONE next action in each thinking process.
2. Generate the action in the correct format. Always put the action inside a pair of #. For example, #click [node3]#.
3. Issue finish action when you think you have achieved the objective.
4. Today is {date}, which might be useful for you to complete the task.)";

constexpr std::string_view kReflectionTemplate =
    "You are an advanced reasoning agent that can improve based on self reflection. You will be given a "
    "previous reasoning trial in which you were given access to operate an Android phone environment with "
    "human-like actions including click and type text on the phone screen, and a task instruction to "
    "complete. You were unsuccessful in completing the task either because you made the wrong action "
    "decisions, or you used up your set number of reasoning steps. In a few sentences, Diagnose a possible "
    "reason for failure and devise a new, concise, high level plan that aims to mitigate the same failure. "
    "Use complete sentences.";

std::string assemble(const PromptBundle& b, std::size_t first_history) {
  std::string out = b.environment_description;
  out += "\n\n";
  if (!b.few_shot_examples.empty()) {
    out += "Here are examples of how to interact with the phone:\n\n";
    for (std::size_t i = 0; i < b.few_shot_examples.size(); ++i) {
      out += "Example " + std::to_string(i + 1) + ":\n" + b.few_shot_examples[i] + "\n\n";
    }
  }
  if (!b.reflections.empty()) {
    out += "Reflections from your previous trials:\n";
    for (const auto& r : b.reflections) out += "- " + r + "\n";
    out += "\n";
  }
  out += "The user's objective: " + b.instruction + "\n\n";
  if (first_history < b.history.size()) {
    out += "The previous actions and observations:\n";
    for (std::size_t i = first_history; i < b.history.size(); ++i) {
      out += "Observation " + std::to_string(i + 1) + ":\n" + b.history[i].observation;
      if (!ends_with(out, "\n")) out += "\n";
      out += "Action " + std::to_string(i + 1) + ": " + b.history[i].action + "\n";
    }
    out += "\n";
  }
  out += "The current phone's observation:\n" + b.current_observation;
  if (!ends_with(out, "\n")) out += "\n";
  if (b.hint) out += "\n" + std::string(kHintHeader) + *b.hint + "\n";
  out += "\nThought:";
  return out;
}

}  // namespace

RenderedPrompt build_prompt(const PromptBundle& bundle, const TokenCounter& counter) {
  const std::size_t hint_tokens = bundle.hint ? counter(*bundle.hint) : 0;
  // Tokens the prompt may still use for the hint beyond what is already in the text.
  const std::size_t reserve_extra = bundle.hint_reserve > hint_tokens ? bundle.hint_reserve - hint_tokens : 0;
  const std::size_t n = bundle.history.size();
  for (std::size_t first = 0; first <= n; ++first) {
    auto text = assemble(bundle, first);
    const std::size_t tokens = counter(text);
    if (tokens + reserve_extra <= bundle.context_limit) {
      return {std::move(text), tokens, n - first, first};
    }
  }
  throw Error(Errc::irreducible_prompt, "mandatory prompt sections exceed the " +
                                            std::to_string(bundle.context_limit) + "-token budget");
}

std::string environment_description(std::string_view app_string, std::string_view date) {
  std::string s(kEnvironmentTemplate);
  s = replace_all(std::move(s), "{app-string}", app_string);
  s = replace_all(std::move(s), "{date}", date);
  return s;
}

const std::vector<std::string>& default_few_shot_examples() {
  static const std::vector<std::string> examples = {
      "The user's objective: Call Bob.\n"
      "The current phone's observation:\n"
      "[nd0] TextView Contacts\n"
      "[nd1] LinearLayout Bob [clickable, long-clickable]\n"
      "[nd2] LinearLayout Jack [clickable, long-clickable]\n"
      "Thought: Bob is listed in the contacts. I should open his entry first.\n"
      "Action: #click [nd1]#",
      "The user's objective: Turn on Wi-Fi.\n"
      "The current phone's observation:\n"
      "[nd0] TextView Network & internet\n"
      "[nd1] Switch Wi-Fi, it is currently unchecked, and you can switch it on. [clickable, checkable]\n"
      "Thought: The Wi-Fi switch is off. Clicking it turns Wi-Fi on, after which the task is done.\n"
      "Action: #click [nd1]#",
  };
  return examples;
}

std::string reflection_prompt(std::string_view instruction, std::string_view trajectory_summary) {
  std::string s(kReflectionTemplate);
  s += "\n\nTask instruction: ";
  s += instruction;
  s += "\n\nPrevious trial:\n";
  s += trajectory_summary;
  if (!ends_with(s, "\n")) s += "\n";
  s += "\nReflection:";
  return s;
}

}  // namespace mobench
