#pragma once

#include <stdexcept>
#include <string>

namespace zetafam {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// Evaluation requested at s = 1 without pole removal.
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Operation does not support the given field kind.
class unsupported_kind : public error {
 public:
  using error::error;
};

/// Input failed structural validation (reducible polynomial, bad record, ...).
class validation_error : public error {
 public:
  using error::error;
};

/// A numerical method failed to reach its accuracy contract.
class numerical_error : public error {
 public:
  using error::error;
};

/// A family description produced no fields.
class empty_family_error : public error {
 public:
  using error::error;
};

class transport_error : public error {
 public:
  using error::error;
};

/// Malformed payload; `path` locates the offending element.
class decode_error : public error {
 public:
  decode_error(const std::string& path, const std::string& what)
      : error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace zetafam
