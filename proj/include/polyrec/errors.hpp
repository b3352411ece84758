#pragma once

#include <stdexcept>
#include <string>

namespace polyrec {

enum class Err {
  NotRegular,
  NotConnected,
  NotSimple,
  InvalidParameter,
  InvalidPermutation,
  TooLarge,
  DegreeTooSmall,
  InvalidPairing,
  NotAWalk,
  CornerMissing,
  CornerDuplicated,
  IncoherentFactor,
  CornerNotCovered,
  InconsistentPropagation,
  NotACycle,
  RankInconsistent,
  GapNotClosed,
  NotAcyclic,
  FacesMissing,
  ParseError,
};

const char* to_string(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline const char* to_string(Err code) {
  switch (code) {
    case Err::NotRegular: return "NotRegular";
    case Err::NotConnected: return "NotConnected";
    case Err::NotSimple: return "NotSimple";
    case Err::InvalidParameter: return "InvalidParameter";
    case Err::InvalidPermutation: return "InvalidPermutation";
    case Err::TooLarge: return "TooLarge";
    case Err::DegreeTooSmall: return "DegreeTooSmall";
    case Err::InvalidPairing: return "InvalidPairing";
    case Err::NotAWalk: return "NotAWalk";
    case Err::CornerMissing: return "CornerMissing";
    case Err::CornerDuplicated: return "CornerDuplicated";
    case Err::IncoherentFactor: return "IncoherentFactor";
    case Err::CornerNotCovered: return "CornerNotCovered";
    case Err::InconsistentPropagation: return "InconsistentPropagation";
    case Err::NotACycle: return "NotACycle";
    case Err::RankInconsistent: return "RankInconsistent";
    case Err::GapNotClosed: return "GapNotClosed";
    case Err::NotAcyclic: return "NotAcyclic";
    case Err::FacesMissing: return "FacesMissing";
    case Err::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace polyrec
