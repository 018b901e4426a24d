#pragma once

#include <stdexcept>
#include <string>

namespace latiso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LATISO_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    explicit Name(const std::string& what) \
        : Error(#Name ": " + what) {}      \
  }

LATISO_DEFINE_ERROR(SingularMatrix);
LATISO_DEFINE_ERROR(DimensionMismatch);
LATISO_DEFINE_ERROR(NotSymmetric);
LATISO_DEFINE_ERROR(NotPositiveDefinite);
LATISO_DEFINE_ERROR(ZeroLattice);
LATISO_DEFINE_ERROR(RankDeficient);
LATISO_DEFINE_ERROR(BoundTooLarge);
LATISO_DEFINE_ERROR(RetryLimitExceeded);
LATISO_DEFINE_ERROR(PreconditionViolated);
LATISO_DEFINE_ERROR(CapExceeded);
LATISO_DEFINE_ERROR(WidthTooSmall);
LATISO_DEFINE_ERROR(NotSublattice);
LATISO_DEFINE_ERROR(ParseError);

#undef LATISO_DEFINE_ERROR

}  // namespace latiso
