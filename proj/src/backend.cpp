#include "mobench/backend.hpp"

#include <cctype>

#include <json.hpp>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

ScriptedBackend::ScriptedBackend(std::string label, std::vector<std::string> outputs)
    : label_(std::move(label)), outputs_(std::move(outputs)) {}

std::string ScriptedBackend::complete(const std::string& prompt) {
  std::lock_guard lock(mu_);
  prompts_.push_back(prompt);
  if (outputs_.empty()) throw Error(Errc::backend_unavailable, label_ + " has no scripted outputs");
  const auto& out = outputs_[std::min(next_, outputs_.size() - 1)];
  ++next_;
  return out;
}

std::vector<std::string> ScriptedBackend::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

std::string sanitize_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_');
  }
  return out.empty() ? "model" : out;
}

CachingBackend::CachingBackend(AgentBackend& inner, std::filesystem::path dir)
    : inner_(inner), dir_(std::move(dir)) {}

std::filesystem::path CachingBackend::entry_path(const std::string& prompt) const {
  return dir_ / sanitize_label(inner_.label()) / (hex64(fnv1a64(prompt)) + ".json");
}

std::string CachingBackend::complete(const std::string& prompt) {
  const auto path = entry_path(prompt);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      const auto j = nlohmann::json::parse(read_file(path));
      if (j.at("prompt").get<std::string>() == prompt && j.at("model").get<std::string>() == inner_.label()) {
        std::lock_guard lock(mu_);
        ++hits_;
        return j.at("completion").get<std::string>();
      }
    } catch (const std::exception&) {
      // unreadable entry; fall through and overwrite it
    }
  }
  auto completion = inner_.complete(prompt);
  nlohmann::ordered_json j = {{"model", inner_.label()},
                              {"prompt_hash", hex64(fnv1a64(prompt))},
                              {"prompt", prompt},
                              {"completion", completion}};
  write_file_atomic(path, j.dump(2) + "\n");
  std::lock_guard lock(mu_);
  ++misses_;
  return completion;
}

std::size_t CachingBackend::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t CachingBackend::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

}  // namespace mobench
