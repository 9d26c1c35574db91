#pragma once

#include <stdexcept>
#include <string>

namespace bsfield {

/// Bad lattice/model/run configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A solver could not produce a certified solution.
struct SolveError : std::runtime_error {
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

/// A smallness/hypothesis probe failed before a solve was attempted.
struct ProbeError : SolveError {
  explicit ProbeError(const std::string& what) : SolveError(what) {}
};

}  // namespace bsfield
