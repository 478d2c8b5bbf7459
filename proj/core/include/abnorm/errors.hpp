#pragma once

#include <stdexcept>
#include <string>

namespace abnorm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
 public:
  explicit InvalidParameters(const std::string& what) : Error("invalid parameters: " + what) {}
};

class NotInvertible : public Error {
 public:
  NotInvertible() : Error("not invertible") {}
};

class NoTableEntry : public Error {
 public:
  explicit NoTableEntry(const std::string& family) : Error("no table entry for " + family) {}
};

class UnknownFamily : public Error {
 public:
  explicit UnknownFamily(const std::string& id) : Error("unknown algebra family: " + id) {}
};

/// The catalog data file is missing, malformed or fails its load-time checks.
class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& what) : Error("catalog: " + what) {}
};

class DependentSpan : public Error {
 public:
  DependentSpan() : Error("dependent spanning set") {}
};

class CanonicalizationFailed : public Error {
 public:
  CanonicalizationFailed() : Error("canonicalization failed") {}
};

class NotGenerating : public Error {
 public:
  NotGenerating() : Error("subspace does not bracket-generate the algebra") {}
};

class InvalidBody : public Error {
 public:
  explicit InvalidBody(const std::string& what) : Error("invalid body: " + what) {}
};

class WrongFamily : public Error {
 public:
  explicit WrongFamily(const std::string& what) : Error("wrong algebra family: " + what) {}
};

}  // namespace abnorm
