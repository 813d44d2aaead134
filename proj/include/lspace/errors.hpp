#pragma once

#include <stdexcept>
#include <string>

namespace lspace {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: graph descriptions, unknown vertices or labels, empty
// words, exceeded size budgets.
struct InputError : Error {
  using Error::Error;
};

// A labelled-space assumption does not hold, or an operation that needs a
// verified space was handed an unverified one.
struct AssumptionError : Error {
  using Error::Error;
};

}  // namespace lspace
