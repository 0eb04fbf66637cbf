#pragma once

#include <stdexcept>
#include <string>

namespace netcoh {

/// Invalid user-supplied input (bad graph data, malformed file, bad flag
/// combination).  The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource cap (node count, dense-solve size) would be
/// exceeded.  Also exit code 1: the request was well-formed but too large.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A mathematical invariant that should hold by construction was violated
/// (route disagreement, identity mismatch, unstable system where stability
/// is guaranteed).  The CLI maps this to exit code 2 so automation can
/// distinguish scientific failure from usage errors.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace netcoh
