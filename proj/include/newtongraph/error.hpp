#pragma once

#include <stdexcept>
#include <string>

namespace newtongraph {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  DegreeTooLow,
  MultipleRoot,
  NoConvergence,
  UnresolvedOrbit,
  NotARoot,
  RayCollision,
  NoEscape,
  BranchJump,
  EndpointUnmatched,
  NonPlanarIncidence,
  VertexCollision,
  LevelCapExceeded,
  NotPostcriticallyFixed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::MultipleRoot: return "MultipleRoot";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnresolvedOrbit: return "UnresolvedOrbit";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::RayCollision: return "RayCollision";
    case ErrorCode::NoEscape: return "NoEscape";
    case ErrorCode::BranchJump: return "BranchJump";
    case ErrorCode::EndpointUnmatched: return "EndpointUnmatched";
    case ErrorCode::NonPlanarIncidence: return "NonPlanarIncidence";
    case ErrorCode::VertexCollision: return "VertexCollision";
    case ErrorCode::LevelCapExceeded: return "LevelCapExceeded";
    case ErrorCode::NotPostcriticallyFixed: return "NotPostcriticallyFixed";
  }
  return "Unknown";
}

}  // namespace newtongraph
