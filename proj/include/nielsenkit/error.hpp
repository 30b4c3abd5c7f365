#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nielsenkit {

enum class ErrorKind {
  MalformedWord,
  RankMismatch,
  IndexOutOfRange,
  NonRegularTranscript,
  DeleteNonTrivial,
  ReductionStall,
  InvalidParameter,
  NotDeterminantOne,
  CoverageFailure,
  DuplicateParticipant,
  SizeCapExceeded,
  UndefinedSecret,
  NotNielsenReduced,
  NotABasis,
  DecryptionFailure,
  ParseError,
  IoError,
};

// Stable machine-readable name, used by the CLI's error reports.
std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a set of shares does not cover every item slot.
// Slots are 1-based.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& what, std::vector<int> missing)
      : Error(ErrorKind::CoverageFailure, what), missing_(std::move(missing)) {}
  const std::vector<int>& missing_slots() const noexcept { return missing_; }

 private:
  std::vector<int> missing_;
};

}  // namespace nielsenkit
