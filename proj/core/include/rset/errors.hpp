#pragma once

#include <stdexcept>
#include <string>

namespace rset {

// Base class for every error the library raises on bad inputs or violated
// model constraints. Internal logic errors use assert/std::logic_error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidVertex : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};
struct NotProper : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

struct SeedNotCommitted : Error {
  using Error::Error;
};
struct TooManyPoints : Error {
  using Error::Error;
};
struct DomainTooSmall : Error {
  using Error::Error;
};

struct InvalidK : Error {
  using Error::Error;
};
struct DegenerateGraph : Error {
  using Error::Error;
};
struct EnumerationBudgetExceeded : Error {
  using Error::Error;
};
struct CandidateOverflow : Error {
  using Error::Error;
};
struct InvalidTrace : Error {
  using Error::Error;
};

// Raised when a run would lose the hitting guarantee; carries the exact
// expectation report rendered by the caller.
struct PreconditionFailed : Error {
  using Error::Error;
};

// Simulator accounting violations. Round/machine identify the offender.
struct CapacityViolation : Error {
  CapacityViolation(const std::string& what, int round, int machine,
                    unsigned long long words)
      : Error(what), round(round), machine(machine), words(words) {}
  int round;
  int machine;
  unsigned long long words;
};

struct BandwidthViolation : Error {
  BandwidthViolation(const std::string& what, int round, int src, int dst,
                     unsigned long long words)
      : Error(what), round(round), src(src), dst(dst), words(words) {}
  int round;
  int src;
  int dst;
  unsigned long long words;
};

}  // namespace rset
