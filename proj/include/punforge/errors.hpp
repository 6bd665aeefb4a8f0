#pragma once

#include <stdexcept>
#include <string>

namespace punforge {

// Base class for every failure caused by bad data or missing resources.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

// Malformed or mismatched on-disk files (model, corpus, WordNet database).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Inputs that violate an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace punforge
