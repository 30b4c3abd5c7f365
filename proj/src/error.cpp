#include "nielsenkit/error.hpp"

namespace nielsenkit {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedWord: return "malformed_word";
    case ErrorKind::RankMismatch: return "rank_mismatch";
    case ErrorKind::IndexOutOfRange: return "index_out_of_range";
    case ErrorKind::NonRegularTranscript: return "non_regular_transcript";
    case ErrorKind::DeleteNonTrivial: return "delete_non_trivial";
    case ErrorKind::ReductionStall: return "reduction_stall";
    case ErrorKind::InvalidParameter: return "invalid_parameter";
    case ErrorKind::NotDeterminantOne: return "not_determinant_one";
    case ErrorKind::CoverageFailure: return "coverage_failure";
    case ErrorKind::DuplicateParticipant: return "duplicate_participant";
    case ErrorKind::SizeCapExceeded: return "size_cap_exceeded";
    case ErrorKind::UndefinedSecret: return "undefined_secret";
    case ErrorKind::NotNielsenReduced: return "not_nielsen_reduced";
    case ErrorKind::NotABasis: return "not_a_basis";
    case ErrorKind::DecryptionFailure: return "decryption_failure";
    case ErrorKind::ParseError: return "parse_error";
    case ErrorKind::IoError: return "io_error";
  }
  return "unknown";
}

}  // namespace nielsenkit
