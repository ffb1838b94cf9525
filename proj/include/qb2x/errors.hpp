#pragma once

#include <stdexcept>
#include <string>

namespace qb2x {

// Every failure raised by the library derives from Error so callers (the CLI in
// particular) can catch one type and still report the specific kind by name().
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept { return "Error"; }
};

#define QB2X_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                          \
  public:                                                              \
    using Error::Error;                                                \
    const char* name() const noexcept override { return #Type; }       \
  };

QB2X_DEFINE_ERROR(InvalidArgument)
QB2X_DEFINE_ERROR(NonFiniteSample)
QB2X_DEFINE_ERROR(InvalidCurve)
QB2X_DEFINE_ERROR(InvalidBox)
QB2X_DEFINE_ERROR(SpuriousNearbyRoot)
QB2X_DEFINE_ERROR(RootNotConverged)
QB2X_DEFINE_ERROR(ContourTouchesBox)
QB2X_DEFINE_ERROR(WrongContourForFrequency)
QB2X_DEFINE_ERROR(QuadratureNotConverged)
QB2X_DEFINE_ERROR(OnSegment)
QB2X_DEFINE_ERROR(MaxSubdivisions)
QB2X_DEFINE_ERROR(ParseError)

#undef QB2X_DEFINE_ERROR

}  // namespace qb2x
