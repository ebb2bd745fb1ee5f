#pragma once

#include <stdexcept>
#include <string>

namespace fusiondepth {

/// Base class for every error raised by the library. `kind()` is a stable
/// identifier that the CLI prints verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FUSIONDEPTH_DEFINE_ERROR(Name)                                         \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& message) : Error(#Name, message) {}       \
  };

FUSIONDEPTH_DEFINE_ERROR(InvalidRank)
FUSIONDEPTH_DEFINE_ERROR(ParseError)
FUSIONDEPTH_DEFINE_ERROR(DimensionMismatch)
FUSIONDEPTH_DEFINE_ERROR(NonDominantInput)
FUSIONDEPTH_DEFINE_ERROR(ResourceCapExceeded)
FUSIONDEPTH_DEFINE_ERROR(NegativeLevel)
FUSIONDEPTH_DEFINE_ERROR(WeightNotInLevel)
FUSIONDEPTH_DEFINE_ERROR(NonConvergence)
FUSIONDEPTH_DEFINE_ERROR(WeylGroupTooLarge)
FUSIONDEPTH_DEFINE_ERROR(RoundingFailure)
FUSIONDEPTH_DEFINE_ERROR(Unbounded)
FUSIONDEPTH_DEFINE_ERROR(NotIrreducible)
FUSIONDEPTH_DEFINE_ERROR(CacheFormatError)
FUSIONDEPTH_DEFINE_ERROR(InvalidConfig)
FUSIONDEPTH_DEFINE_ERROR(InternalError)

#undef FUSIONDEPTH_DEFINE_ERROR

}  // namespace fusiondepth
