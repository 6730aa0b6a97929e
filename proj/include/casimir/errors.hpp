#pragma once

#include <stdexcept>
#include <string>

namespace casimir
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. xi <= 0).
class DomainError : public Error
{
public:
   using Error::Error;
};

/// Structurally valid input that violates a physical or model invariant.
class InputError : public Error
{
public:
   using Error::Error;
};

/// Malformed text in a data file. Carries the offending line when known.
class ParseError : public Error
{
public:
   ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
   {
   }

   int line() const { return line_; }

private:
   int line_;
};

/// Missing or inconsistent run configuration.
class ConfigError : public Error
{
public:
   using Error::Error;
};

/// Quadrature or series failed to converge within its iteration caps.
class NumericalError : public Error
{
public:
   using Error::Error;
};

} // namespace casimir
