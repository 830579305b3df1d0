#pragma once

#include <stdexcept>
#include <string>

namespace gaussbreak {

/// Malformed input: wrong dimensions, non-finite entries, asymmetric blocks,
/// unparseable documents. The message names the offending field.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input that violates an operation's precondition
/// (e.g. requesting a witness for a channel that has none).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// Numerical routine could not produce a trustworthy result.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaussbreak
