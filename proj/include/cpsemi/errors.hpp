#pragma once

#include <stdexcept>
#include <string>

namespace cpsemi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CPSEMI_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    explicit Name(const std::string& what) \
        : Error(#Name ": " + what) {}      \
  }

CPSEMI_DEFINE_ERROR(NotHermitian);
CPSEMI_DEFINE_ERROR(NotPSD);
CPSEMI_DEFINE_ERROR(DimensionMismatch);
CPSEMI_DEFINE_ERROR(NotCP);
CPSEMI_DEFINE_ERROR(NotMember);
CPSEMI_DEFINE_ERROR(NotHermiticityPreserving);
CPSEMI_DEFINE_ERROR(NotCCP);
CPSEMI_DEFINE_ERROR(ConstraintViolated);
CPSEMI_DEFINE_ERROR(OwnerMismatch);
CPSEMI_DEFINE_ERROR(LogBranch);
CPSEMI_DEFINE_ERROR(ParseError);

#undef CPSEMI_DEFINE_ERROR

}  // namespace cpsemi
