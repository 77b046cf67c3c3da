#pragma once

#include <stdexcept>
#include <string>

namespace dacs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DACS_DEFINE_ERROR(name)            \
  class name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

DACS_DEFINE_ERROR(NotNested)
DACS_DEFINE_ERROR(NotFullRowRank)
DACS_DEFINE_ERROR(NotFullColumnRank)
DACS_DEFINE_ERROR(SingularTransform)
DACS_DEFINE_ERROR(NotAProlongation)
DACS_DEFINE_ERROR(NoSolution)
DACS_DEFINE_ERROR(NonUnique)
DACS_DEFINE_ERROR(NotControllable)
DACS_DEFINE_ERROR(NotPrime)
DACS_DEFINE_ERROR(NotObservable)
DACS_DEFINE_ERROR(InternalInvariantViolation)
DACS_DEFINE_ERROR(ParseError)
DACS_DEFINE_ERROR(DimensionError)
DACS_DEFINE_ERROR(ZeroDenominator)

#undef DACS_DEFINE_ERROR

// Internal consistency check; throws rather than aborting so callers can
// report which stage broke.
inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InternalInvariantViolation(what);
}

}  // namespace dacs
