#pragma once

#include <stdexcept>
#include <string>

namespace bessel_lab {

// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError() : std::runtime_error("singular matrix") {}
  using std::runtime_error::runtime_error;
};

// Reading a series coefficient that lies at or beyond its truncation order.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A numerical routine could not reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bessel_lab
