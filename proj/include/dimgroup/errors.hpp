#pragma once

#include <stdexcept>
#include <string>

namespace dimgroup {

/// Malformed substitution file or rule set.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called on input that violates its stated precondition
/// (non-primitive, periodic, non-proper, ...).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured iteration cap was exhausted before a computation settled.
class CapExceededError : public std::runtime_error {
public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dimgroup
