#include "osnma/error.hpp"

namespace osnma {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadCrc: return "BadCrc";
    case ErrorCode::BadPageType: return "BadPageType";
    case ErrorCode::BadFlags: return "BadFlags";
    case ErrorCode::SlotConflict: return "SlotConflict";
    case ErrorCode::ConflictingKeyBits: return "ConflictingKeyBits";
    case ErrorCode::GapTooLarge: return "GapTooLarge";
    case ErrorCode::KeyNotForTag: return "KeyNotForTag";
    case ErrorCode::DataIncomplete: return "DataIncomplete";
    case ErrorCode::MissingFlexInfo: return "MissingFlexInfo";
    case ErrorCode::OutOfOrderInput: return "OutOfOrderInput";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::AdversaryInapplicable: return "AdversaryInapplicable";
    case ErrorCode::StreamTooShort: return "StreamTooShort";
    case ErrorCode::NoFixes: return "NoFixes";
    case ErrorCode::NoInavBlocks: return "NoInavBlocks";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace osnma
