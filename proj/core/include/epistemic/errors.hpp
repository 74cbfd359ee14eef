#pragma once

#include <stdexcept>
#include <string>

namespace epistemic {

// All library failures derive from Error so callers (the CLI in particular)
// can map them onto exit codes with a single catch.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown names, wrong universe, empty group.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked on a structure of the wrong class
/// (for example, a non-partitional structure where a partition is needed).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A possibility set fell outside the domain of a decision function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Document text could not be parsed. The message carries the byte offset.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace epistemic
