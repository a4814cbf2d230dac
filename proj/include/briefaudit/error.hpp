#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace briefaudit {

enum class ErrorCode {
  DecodeError,
  EmptyDocument,
  UnknownFormat,
  SchemaError,
  DuplicateId,
  MissingFile,
  UnknownElement,
  NoRulesForElement,
  MissingFrequencyTable,
  PromptTooLarge,
  Timeout,
  AuthMissing,
  RemoteError,
  MalformedResponse,
  AllZeroWeights,
  NegativeWeight,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure the library reports carries one of the codes above so callers
/// (and tests) can branch on the category rather than the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace briefaudit
