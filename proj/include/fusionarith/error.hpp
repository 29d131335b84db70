#pragma once

#include <stdexcept>
#include <string>

namespace fusionarith {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside the polynomial degrees it supports.
class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

/// A documented precondition (monic, squarefree, irreducible, ...) was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A class-equation instance or dimension target admits no solution at all.
class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

/// Two quadratic-field elements over different fields were combined.
class MixedFieldError : public Error {
 public:
  using Error::Error;
};

/// Malformed number, polynomial or quadratic-field literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A case file does not follow the schema. `path()` names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace fusionarith
