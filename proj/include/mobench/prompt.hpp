#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobench/tokenizer.hpp"

namespace mobench {

struct HistoryItem {
  std::string observation;
  std::string action;
};

struct PromptBundle {
  std::string environment_description;
  std::vector<std::string> few_shot_examples;
  std::vector<std::string> reflections;
  std::string instruction;
  std::vector<HistoryItem> history;  // oldest first
  std::string current_observation;
  std::optional<std::string> hint;
  std::size_t context_limit = 4096;
  // Held back whether or not a hint is present, so toggling the hint never
  // changes which history survives truncation.
  std::size_t hint_reserve = 48;
};

struct RenderedPrompt {
  std::string text;
  std::size_t tokens = 0;
  std::size_t history_kept = 0;
  std::size_t history_dropped = 0;
};

// Sections in order: environment description, examples, reflections,
// objective, history, current observation, hint. Oldest history pairs are
// dropped first; throws IrreduciblePrompt when the rest alone is over budget.
RenderedPrompt build_prompt(const PromptBundle& bundle, const TokenCounter& counter = default_token_counter());

// The environment description with the app list and date filled in.
std::string environment_description(std::string_view app_string, std::string_view date);
const std::vector<std::string>& default_few_shot_examples();

// Header of the hint section; everything from here to the end marker is the hint region.
inline constexpr std::string_view kHintHeader = "Exploration hint: ";

std::string reflection_prompt(std::string_view instruction, std::string_view trajectory_summary);

}  // namespace mobench
