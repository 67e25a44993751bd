#ifndef ISOPART_ERRORS_HPP_
#define ISOPART_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace isopart {

/// Input outside an operation's domain. The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Perimeter smaller than the background perimeter it is compared against.
class InconsistentInputError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A numerical procedure failed to reach its tolerance. CLI exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace detail
}  // namespace isopart

#endif  // ISOPART_ERRORS_HPP_
