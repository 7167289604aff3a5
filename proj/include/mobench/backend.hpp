#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

namespace mobench {

// Text completion capability behind every LLM-facing component. Implementations
// must be safe to share across concurrently running episodes.
class AgentBackend {
 public:
  virtual ~AgentBackend() = default;
  // Throws Error(backend_unavailable) when no completion can be produced.
  virtual std::string complete(const std::string& prompt) = 0;
  virtual std::string label() const = 0;
};

// Replays a fixed list of completions; after the list runs out the last entry repeats.
class ScriptedBackend : public AgentBackend {
 public:
  ScriptedBackend(std::string label, std::vector<std::string> outputs);

  std::string complete(const std::string& prompt) override;
  std::string label() const override { return label_; }
  std::vector<std::string> prompts() const;

 private:
  std::string label_;
  std::vector<std::string> outputs_;
  mutable std::mutex mu_;
  std::size_t next_ = 0;
  std::vector<std::string> prompts_;
};

class FunctionBackend : public AgentBackend {
 public:
  using Fn = std::function<std::string(const std::string&)>;
  FunctionBackend(std::string label, Fn fn) : label_(std::move(label)), fn_(std::move(fn)) {}

  std::string complete(const std::string& prompt) override { return fn_(prompt); }
  std::string label() const override { return label_; }

 private:
  std::string label_;
  Fn fn_;
};

// Disk cache keyed by (prompt hash, model label).
// Layout: <dir>/<sanitized label>/<fnv1a64(prompt) hex>.json holding
// {"model", "prompt_hash", "prompt", "completion"}.
class CachingBackend : public AgentBackend {
 public:
  CachingBackend(AgentBackend& inner, std::filesystem::path dir);

  std::string complete(const std::string& prompt) override;
  std::string label() const override { return inner_.label(); }
  std::size_t hits() const;
  std::size_t misses() const;
  std::filesystem::path entry_path(const std::string& prompt) const;

 private:
  AgentBackend& inner_;
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

std::string sanitize_label(const std::string& label);

}  // namespace mobench
