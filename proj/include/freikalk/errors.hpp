#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freikalk {

// Base of every domain error the library throws. Subclasses are named after
// the failure mode so callers (and the CLI exit-code mapping) can dispatch
// on type instead of parsing messages.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGenerator : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct RankTooSmall : Error { using Error::Error; };
struct ZeroExponent : Error { using Error::Error; };
struct IdentityElement : Error { using Error::Error; };
struct ZeroElement : Error { using Error::Error; };
struct ZeroFactor : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct UnsupportedQuotient : Error { using Error::Error; };
struct UnsupportedRing : Error { using Error::Error; };
struct NotInKernel : Error { using Error::Error; };
struct NotInVerbal : Error { using Error::Error; };
struct NotInSubgroup : Error { using Error::Error; };
struct LevelOutOfRange : Error { using Error::Error; };
struct UnknownLayer : Error { using Error::Error; };
struct TooManyRelators : Error { using Error::Error; };
struct ShadowNotTriangular : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct Inconclusive : Error { using Error::Error; };

// Raised only when an internal cross-check fails; it always signals an
// implementation bug, never bad input.
struct InternalInconsistency : Error { using Error::Error; };

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace freikalk
