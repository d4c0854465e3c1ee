#pragma once

#include <stdexcept>
#include <string>

namespace ttid {

// Every failure surfaced by the library carries a stable machine-readable code
// (used verbatim in JSON reports and CLI exit handling).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define TTID_DEFINE_ERROR(Name, Default)                                  \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what = Default) : Error(#Name, what) {} \
  };

TTID_DEFINE_ERROR(DivisionByZero, "division by zero")
TTID_DEFINE_ERROR(NotSquarefree, "defining polynomial is not squarefree")
TTID_DEFINE_ERROR(IncompatibleTower, "elements live in unrelated field towers")
TTID_DEFINE_ERROR(InsufficientPrecision, "jet precision too low for this query")
TTID_DEFINE_ERROR(NotDivisible, "exact division failed")
TTID_DEFINE_ERROR(InvalidArgument, "invalid argument")
TTID_DEFINE_ERROR(DicriticalMap, "every direction is characteristic")
TTID_DEFINE_ERROR(NotCharacteristic, "direction is not characteristic")
TTID_DEFINE_ERROR(NotInvariantDirection, "direction is not invariant under the linear part")
TTID_DEFINE_ERROR(DepthExceeded, "resolution depth exceeded")
TTID_DEFINE_ERROR(SeparatrixNotStrict, "curve is not a strict separatrix")
TTID_DEFINE_ERROR(PropertyViolation, "index property violated")
TTID_DEFINE_ERROR(IndexZero, "residual index vanishes")
TTID_DEFINE_ERROR(Dicritical, "generator is dicritical")
TTID_DEFINE_ERROR(CertificateIncomplete, "certificate loop cap reached")
TTID_DEFINE_ERROR(CornerPoint, "point is a corner of the divisor")
TTID_DEFINE_ERROR(NotTangential, "divisor is not a strict separatrix of the generator")
TTID_DEFINE_ERROR(Escape, "orbit escaped")
TTID_DEFINE_ERROR(NotConvergent, "orbit does not converge")
TTID_DEFINE_ERROR(ShapeMismatch, "map does not have the expected normal shape")

#undef TTID_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("ParseError", std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ttid
