#pragma once

#include <string>

#include "mobench/backend.hpp"

namespace mobench {

struct HttpBackendConfig {
  std::string label;         // identity used for caching and reports
  std::string endpoint;      // e.g. https://api.example.com/v1/chat/completions
  std::string model;
  std::string api_key_env;   // name of the environment variable holding the key
  double temperature = 0.0;
  int timeout_seconds = 60;
  int max_retries = 2;
  int retry_backoff_ms = 500;
};

// Chat-completion style endpoint: POST {"model", "messages", "temperature"},
// reads choices[0].message.content.
class HttpBackend : public AgentBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string complete(const std::string& prompt) override;
  std::string label() const override { return config_.label.empty() ? config_.model : config_.label; }

 private:
  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace mobench
