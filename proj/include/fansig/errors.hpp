#pragma once

#include <stdexcept>
#include <string>

namespace fansig {

// Every contract violation in the library throws Error with one of these
// codes; the CLI maps them to exit code 2 (input/operational error).
enum class ErrorCode {
  NonPrimitiveRay,
  DuplicateRay,
  NotSimplicial,
  OverlappingCones,
  DanglingRay,
  ConeNotInFan,
  NotAFacet,
  NonUnimodular,
  ImagePrimitivityViolation,
  NotComplete,
  PointOutsideSupport,
  UnknownName,
  NotInteriorPoint,
  NonPrimitive,
  IncompatibleRestrictions,
  UnsupportedSpec,
  NotCompleteSimplicialUnimodular,
  DegeneratePoint,
  DegreeMismatch,
  PreconditionViolated,
  OddIndex,
  OddRank,
  NoTransverseCone,
  NotLocallyConvex,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail = "") {
  throw Error(code, detail);
}

}  // namespace fansig
