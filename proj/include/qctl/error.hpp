#pragma once

#include <stdexcept>
#include <string>

namespace qctl {

enum class ErrorKind {
  ZeroDivision,
  DimensionMismatch,
  EigensolverFailure,
  ZeroDivisor,
  BothZero,
  IllConditioned,
  NonCausal,
  AnnihilatorNotFound,
  Unsolvable,
  DegenerateKernel,
  ZeroRoot,
  NonCausalController,
  IllPosed,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` lets callers
// (and the CLI exit-code mapping) dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qctl
