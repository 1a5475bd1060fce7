#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace magc {

enum class Errc {
  SelfLoop,
  CoordOutOfRange,
  ArityMismatch,
  NonPositiveCoord,
  InvalidTuple,
  IndexOutOfRange,
  ZeroNotEncodable,
  MalformedCode,
  LengthMismatch,
  IndexerMismatch,
  SizeMismatch,
  SourceExhausted,
  EmptyBits,
  UnwitnessedAspect,
  SelfPair,
  SearchLimitExceeded,
  TooLarge,
  MalformedStream,
  AdapterRoundTripFailure,
  Parse,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::CoordOutOfRange: return "CoordOutOfRange";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::NonPositiveCoord: return "NonPositiveCoord";
    case Errc::InvalidTuple: return "InvalidTuple";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ZeroNotEncodable: return "ZeroNotEncodable";
    case Errc::MalformedCode: return "MalformedCode";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::IndexerMismatch: return "IndexerMismatch";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::SourceExhausted: return "SourceExhausted";
    case Errc::EmptyBits: return "EmptyBits";
    case Errc::UnwitnessedAspect: return "UnwitnessedAspect";
    case Errc::SelfPair: return "SelfPair";
    case Errc::SearchLimitExceeded: return "SearchLimitExceeded";
    case Errc::TooLarge: return "TooLarge";
    case Errc::MalformedStream: return "MalformedStream";
    case Errc::AdapterRoundTripFailure: return "AdapterRoundTripFailure";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every contract violation in the library is reported as an Error carrying
/// the violated contract's code; what() starts with the code name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace magc
