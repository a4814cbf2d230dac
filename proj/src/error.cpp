#include "briefaudit/error.hpp"

namespace briefaudit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::NoRulesForElement: return "NoRulesForElement";
    case ErrorCode::MissingFrequencyTable: return "MissingFrequencyTable";
    case ErrorCode::PromptTooLarge: return "PromptTooLarge";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::AuthMissing: return "AuthMissing";
    case ErrorCode::RemoteError: return "RemoteError";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace briefaudit
