#pragma once

#include <stdexcept>
#include <string>

namespace pichar {

/// Failure categories surfaced by the library.
///
/// Certification errors are reserved for internal consistency failures that
/// should never happen on valid inputs (they indicate a bug, a corrupted
/// cache, or numeric breakage); callers are expected to treat them as fatal.
enum class ErrorKind {
  InvalidInput,   ///< caller passed something malformed or out of domain
  CapExceeded,    ///< a hard size cap was hit (e.g. element-closure cap)
  TierExceeded,   ///< a resource tier was exceeded (e.g. exhaustive subgroup tier)
  Certification,  ///< an exact self-check failed
  NotFound,       ///< a requested object does not exist
  Io,             ///< filesystem / serialization problem
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

/// Always-on invariant check (independent of NDEBUG): these guard exact-math
/// invariants, so they stay active in release builds.
#define PICHAR_CHECK(cond, kind, msg)                  \
  do {                                                 \
    if (!(cond)) ::pichar::fail((kind), (msg));        \
  } while (0)

#define PICHAR_INTERNAL(cond, msg) PICHAR_CHECK(cond, ::pichar::ErrorKind::Certification, msg)

}  // namespace pichar
