#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "briefaudit/elements.hpp"

namespace briefaudit {

/// A text generator the red-team pass prompts. Implementations must be safe
/// to call from several threads at once.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;

  /// Returns the generated text or throws Error (Timeout, AuthMissing,
  /// RemoteError, MalformedResponse).
  virtual std::string generate(std::string_view system_prompt, std::string_view prompt) const = 0;

  /// Settings echoed into reports; never contains credentials.
  virtual nlohmann::json descriptor() const = 0;

  virtual std::size_t max_concurrency() const { return 1; }
};

struct MockSettings {
  double coverage = 1.0;
  std::set<Element> categories;
  std::uint64_t seed = 0;
  std::vector<std::string> verbs;  // empty: default verb list
};

/// Deterministic stand-in for a generative model. It names the objects of the
/// first ceil(c * n) deliverable mentions found in the prompt and adds one
/// canned compliance passage per configured category (3, 4 or 7).
class MockBackend final : public GeneratorBackend {
 public:
  explicit MockBackend(MockSettings settings);

  std::string generate(std::string_view system_prompt, std::string_view prompt) const override;
  nlohmann::json descriptor() const override;
  std::size_t max_concurrency() const override { return 8; }

  static std::string_view compliance_passage(Element category);

 private:
  MockSettings settings_;
};

struct HttpSettings {
  std::string endpoint;  // http(s)://host[:port]/path
  std::string model;
  std::string auth_env = "OPENAI_API_KEY";
  double timeout_s = 60.0;
  std::size_t max_concurrent = 2;
};

/// Chat-completion style client: POST {"model", "messages", "temperature": 0}
/// with a bearer token and read `choices[0].message.content`.
class HttpBackend final : public GeneratorBackend {
 public:
  explicit HttpBackend(HttpSettings settings);

  std::string generate(std::string_view system_prompt, std::string_view prompt) const override;
  nlohmann::json descriptor() const override;
  std::size_t max_concurrency() const override { return settings_.max_concurrent; }

  /// Request body for one prompt, exposed for wire-format tests.
  nlohmann::json request_body(std::string_view system_prompt, std::string_view prompt) const;
  /// Extracts the first choice's content or throws MalformedResponse.
  static std::string parse_response(std::string_view body);

 private:
  HttpSettings settings_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace briefaudit
