#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdspanner {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A direction lies on (or within tolerance of) a cone boundary ray.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

class UndefinedDelta : public Error {
 public:
  using Error::Error;
};

class GeneralPositionFailure : public Error {
 public:
  using Error::Error;
};

/// The half-theta-6 graph violated a structural property it must have
/// (fan neighbours not adjacent, two orientations of one segment, ...).
class BrokenTriangulation : public Error {
 public:
  using Error::Error;
};

class NotOnPath : public Error {
 public:
  using Error::Error;
};

class NonTermination : public Error {
 public:
  using Error::Error;
};

class ChargeCollision : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  Disconnected(const std::string& what, std::size_t a, std::size_t b)
      : Error(what), first(a), second(b) {}
  /// Two points that lie in different components.
  std::size_t first;
  std::size_t second;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Malformed input. Line and byte are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line_no = 0, std::size_t byte_no = 0)
      : Error(what), line(line_no), byte(byte_no) {}
  std::size_t line;
  std::size_t byte;
};

class DuplicatePoint : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdspanner
