#pragma once

#include <stdexcept>
#include <string>

namespace mintypes {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation is called outside its documented domain
// (e.g. derive_search on a term that still contains a redex).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mintypes
