#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace osnma {

enum class ErrorCode {
  BadCrc,
  BadPageType,
  BadFlags,
  SlotConflict,
  ConflictingKeyBits,
  GapTooLarge,
  KeyNotForTag,
  DataIncomplete,
  MissingFlexInfo,
  OutOfOrderInput,
  ConfigInvalid,
  AdversaryInapplicable,
  StreamTooShort,
  NoFixes,
  NoInavBlocks,
  IoFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace osnma
