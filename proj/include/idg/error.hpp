#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace idg {

enum class ErrorCode {
  ParseError,
  ValidationError,
  UnknownDoctrine,
  EpisodeOver,
  MalformedAction,
  UnknownHost,
  InvalidArgument,
  HorizonTooLarge,
  LengthMismatch,
  UnknownSession,
  WrongStatus,
  StaleStep,
  Storage,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::ValidationError: return "validation_error";
    case ErrorCode::UnknownDoctrine: return "unknown_doctrine";
    case ErrorCode::EpisodeOver: return "episode_over";
    case ErrorCode::MalformedAction: return "malformed_action";
    case ErrorCode::UnknownHost: return "unknown_host";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::HorizonTooLarge: return "horizon_too_large";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::WrongStatus: return "wrong_status";
    case ErrorCode::StaleStep: return "stale_step";
    case ErrorCode::Storage: return "storage_error";
  }
  return "error";
}

// Base for every failure the library reports. Outcomes of game actions
// (a failed exploit, a blocked removal) are not errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace idg
