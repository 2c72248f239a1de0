#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rulplan {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One violated invariant, addressed by a JSON-pointer-like field path
/// such as "assets[3].rul".
struct Violation {
  std::string path;
  std::string reason;

  bool operator==(const Violation&) const = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  ValidationError(std::string path, std::string reason)
      : ValidationError(std::vector<Violation>{{std::move(path), std::move(reason)}}) {}

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

class PermutationError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyRegistryError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace rulplan
