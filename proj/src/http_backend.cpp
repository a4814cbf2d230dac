#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cmath>
#include <cstdlib>

#include "briefaudit/backend.hpp"
#include "briefaudit/error.hpp"

namespace briefaudit {

using nlohmann::json;

HttpBackend::HttpBackend(HttpSettings settings) : settings_(std::move(settings)) {
  if (!(settings_.timeout_s > 0.0)) throw Error(ErrorCode::SchemaError, "timeout must be > 0");
  if (settings_.max_concurrent == 0) settings_.max_concurrent = 1;
  const auto& url = settings_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::SchemaError, "endpoint must be an http(s) URL: " + url);
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::SchemaError, "unsupported endpoint scheme '" + scheme + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (scheme_host_port_.size() <= scheme_end + 3) {
    throw Error(ErrorCode::SchemaError, "endpoint has no host: " + url);
  }
}

json HttpBackend::request_body(std::string_view system_prompt, std::string_view prompt) const {
  return {{"model", settings_.model},
          {"messages", json::array({{{"role", "system"}, {"content", system_prompt}},
                                    {{"role", "user"}, {"content", prompt}}})},
          {"temperature", 0}};
}

std::string HttpBackend::parse_response(std::string_view body) {
  try {
    const auto doc = json::parse(body);
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw Error(ErrorCode::MalformedResponse, "content is not a string");
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("unexpected response shape: ") + e.what());
  }
}

std::string HttpBackend::generate(std::string_view system_prompt, std::string_view prompt) const {
  const char* token = std::getenv(settings_.auth_env.c_str());
  if (token == nullptr || *token == '\0') {
    throw Error(ErrorCode::AuthMissing, "environment variable " + settings_.auth_env + " is not set");
  }

  httplib::Client client(scheme_host_port_);
  const auto seconds = static_cast<time_t>(settings_.timeout_s);
  const auto micros = static_cast<time_t>(std::llround((settings_.timeout_s - static_cast<double>(seconds)) * 1e6));
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  const httplib::Headers headers = {{"Authorization", std::string("Bearer ") + token}};
  const auto payload = request_body(system_prompt, prompt).dump();
  auto result = client.Post(path_, headers, payload, "application/json");
  if (!result) {
    const auto err = result.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
        err == httplib::Error::Write) {
      throw Error(ErrorCode::Timeout, "request to " + settings_.endpoint + " failed: " + httplib::to_string(err));
    }
    throw Error(ErrorCode::RemoteError, "request to " + settings_.endpoint + " failed: " + httplib::to_string(err));
  }
  if (result->status < 200 || result->status >= 300) {
    throw Error(ErrorCode::RemoteError, "HTTP " + std::to_string(result->status) + ": " +
                                            result->body.substr(0, 2000));
  }
  return parse_response(result->body);
}

json HttpBackend::descriptor() const {
  return {{"kind", "http"},
          {"endpoint", settings_.endpoint},
          {"model", settings_.model},
          {"auth_env", settings_.auth_env},
          {"timeout_s", settings_.timeout_s},
          {"max_concurrent", settings_.max_concurrent}};
}

}  // namespace briefaudit
