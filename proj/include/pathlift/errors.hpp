#pragma once

#include <stdexcept>
#include <string>

namespace pathlift {

/// A precondition of a construction does not hold (bad weights, endpoint
/// laws that do not match, a path violating its declared Lipschitz bound).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text or JSON.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity failed to hold. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pathlift
