#pragma once

#include <stdexcept>

namespace cip {

// Invalid inputs: bad parameters, violated type invariants. Maps to CLI exit 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed file contents.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Factorization breakdown past maximum jitter. Maps to CLI exit 3.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solver exceeded its iteration cap. Maps to CLI exit 3.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cip
