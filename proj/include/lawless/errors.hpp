#pragma once

// Exception hierarchy shared by every lawless module.  Each failure mode that
// callers are expected to distinguish gets its own type; all of them derive
// from lawless::Error so a CLI can catch the family in one place.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lawless {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  // Structural errors with no single offending character, e.g. in JSON.
  explicit ParseError(const std::string& what) : Error(what), position_(0) {}

  /// 1-based character offset of the offending input.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class RangeError : public Error { using Error::Error; };
class ArityError : public Error { using Error::Error; };
class DegreeError : public Error { using Error::Error; };
class BudgetError : public Error { using Error::Error; };
class DepthError : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class NameError : public Error { using Error::Error; };
class EmptyWordError : public Error { using Error::Error; };

// Thompson group map validation.
class MonotonicityError : public Error { using Error::Error; };
class SlopeError : public Error { using Error::Error; };
class EndpointError : public Error { using Error::Error; };
class CapError : public Error { using Error::Error; };

// Witness construction.
class MoverExhausted : public Error { using Error::Error; };
class SpaceError : public Error { using Error::Error; };

// Raised when an internal invariant of an algorithm fails.  Seeing one of
// these is always a bug in lawless, never a property of the input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lawless
