#include "fansig/errors.hpp"

namespace fansig {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::DuplicateRay: return "DuplicateRay";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::OverlappingCones: return "OverlappingCones";
    case ErrorCode::DanglingRay: return "DanglingRay";
    case ErrorCode::ConeNotInFan: return "ConeNotInFan";
    case ErrorCode::NotAFacet: return "NotAFacet";
    case ErrorCode::NonUnimodular: return "NonUnimodular";
    case ErrorCode::ImagePrimitivityViolation: return "ImagePrimitivityViolation";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::PointOutsideSupport: return "PointOutsideSupport";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NotInteriorPoint: return "NotInteriorPoint";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::IncompatibleRestrictions: return "IncompatibleRestrictions";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::NotCompleteSimplicialUnimodular:
      return "NotCompleteSimplicialUnimodular";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OddIndex: return "OddIndex";
    case ErrorCode::OddRank: return "OddRank";
    case ErrorCode::NoTransverseCone: return "NoTransverseCone";
    case ErrorCode::NotLocallyConvex: return "NotLocallyConvex";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace fansig
