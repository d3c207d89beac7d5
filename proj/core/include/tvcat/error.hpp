#pragma once

#include <stdexcept>
#include <string>

namespace tvcat {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad tables, unknown identifiers, shape mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A structure was well formed but violates one of its laws.
class ValidationError : public Error {
 public:
  ValidationError(std::string law, std::string witness, std::string context = {})
      : Error((context.empty() ? std::string() : context + ": ") + law + " violated: " + witness),
        law_(std::move(law)),
        witness_(std::move(witness)),
        context_(std::move(context)) {}

  const std::string& law() const noexcept { return law_; }
  const std::string& witness() const noexcept { return witness_; }
  /// File and object the failure was found in, when known.
  const std::string& context() const noexcept { return context_; }

 private:
  std::string law_;
  std::string witness_;
  std::string context_;
};

/// An enumeration grew past the configured space limit.
class SizeCapExceeded : public Error {
 public:
  SizeCapExceeded(std::string what, std::size_t cap)
      : Error(what + " exceeds size cap " + std::to_string(cap)), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace tvcat
