#pragma once

#include <stdexcept>
#include <string>

namespace geodef {

enum class Err {
  NotPrime,
  ReducibleModulus,
  ZeroDenominator,
  SyntaxError,
  UnknownSymbol,
  UnboundVariable,
  OrderUnsupported,
  NotEnumerable,
  DimensionTooSmall,
  LengthMismatch,
  CapacityExceeded,
  SingularLinearPart,
  DependentFrame,
  UniverseMismatch,
  NotAnAutomorphism,
  NoDecomposition,
  FieldMismatch,
  TwoElementField,
  EmptyDelta,
  UnboundSymbol,
  InvalidArgument,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg);
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] void fail(Err code, const std::string& msg);

}  // namespace geodef
