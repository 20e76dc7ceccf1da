#include "geodef/errors.hpp"

namespace geodef {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotPrime: return "NotPrime";
    case Err::ReducibleModulus: return "ReducibleModulus";
    case Err::ZeroDenominator: return "ZeroDenominator";
    case Err::SyntaxError: return "SyntaxError";
    case Err::UnknownSymbol: return "UnknownSymbol";
    case Err::UnboundVariable: return "UnboundVariable";
    case Err::OrderUnsupported: return "OrderUnsupported";
    case Err::NotEnumerable: return "NotEnumerable";
    case Err::DimensionTooSmall: return "DimensionTooSmall";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::CapacityExceeded: return "CapacityExceeded";
    case Err::SingularLinearPart: return "SingularLinearPart";
    case Err::DependentFrame: return "DependentFrame";
    case Err::UniverseMismatch: return "UniverseMismatch";
    case Err::NotAnAutomorphism: return "NotAnAutomorphism";
    case Err::NoDecomposition: return "NoDecomposition";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::TwoElementField: return "TwoElementField";
    case Err::EmptyDelta: return "EmptyDelta";
    case Err::UnboundSymbol: return "UnboundSymbol";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Err code, const std::string& msg)
    : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace geodef
