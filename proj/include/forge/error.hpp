#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Base class for every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or fields do not match.
class dimension_error : public error {
 public:
  using error::error;
};

/// A documented precondition was violated by the caller.
class precondition_error : public error {
 public:
  using error::error;
};

/// A search or enumeration exceeded its configured budget.
class resource_error : public error {
 public:
  using error::error;
};

/// A constructed object failed its own validation (e.g. order mismatch).
class construction_error : public error {
 public:
  using error::error;
};

/// Bad command-line usage or unknown check id.
class usage_error : public error {
 public:
  using error::error;
};

/// Malformed cache file.
class format_error : public error {
 public:
  using error::error;
};

}  // namespace forge
