#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffgh {

// Exit codes used by the command line front end.
enum class ExitCode : int { ok = 0, usage = 1, validation = 2, cap = 3 };

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::validation; }
};

// A term, order element or morphism does not satisfy its invariants.
class InvalidTerm : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  ExitCode exit_code() const noexcept override { return ExitCode::usage; }

private:
  std::size_t position_;
};

// Bad command line or configuration.
class UsageError : public Error {
public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::usage; }
};

// Some cap (resource, stage, size, parameter) was hit.
class CapExceeded : public Error {
public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::cap; }
};

// A system claiming weak finiteness produced more terms over a finite order
// than the cap allows, or a non weakly finite system was used where D(n)
// must be finite.
class WeakFinitenessViolation : public CapExceeded {
public:
  using CapExceeded::CapExceeded;
};

// Violated internal invariant. Never expected to fire.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace ffgh
