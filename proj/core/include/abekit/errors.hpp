#pragma once

#include <stdexcept>
#include <string>

namespace abekit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An expansion or enumeration crossed its configured degree or term budget.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was handed an input outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A gate or vertex graph contains a directed cycle.
class CycleError : public Error {
 public:
  using Error::Error;
};

}  // namespace abekit
