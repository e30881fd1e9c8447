#pragma once

#include <stdexcept>
#include <string>

namespace chevstab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mismatched series shapes, table widths
class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// data that cannot come from a real space (non-integral closed point counts, ...)
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// enumeration would exceed the configured loop budget
class GuardError : public Error {
 public:
  using Error::Error;
};

// an identity that must hold exactly did not
class CheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace chevstab
