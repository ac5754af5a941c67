#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nanoie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input record does not follow the six-slot record layout.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::string slot = {})
      : Error(message), slot_(std::move(slot)) {}

  /// Name of the offending slot, empty when the violation is not slot-specific.
  const std::string& slot() const noexcept { return slot_; }

 private:
  std::string slot_;
};

/// A composition string could not be turned into a fraction.
class CompositionError : public Error {
 public:
  CompositionError(const std::string& raw, const std::string& reason)
      : Error("cannot standardize composition '" + raw + "': " + reason), raw_(raw) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Metrics received a sample that has not been through the lexicon.
class NotStandardized : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Retriable failure talking to a completion or embedding service.
class TransportError : public Error {
 public:
  using Error::Error;
};

class RetriesExhausted : public Error {
 public:
  RetriesExhausted(const std::string& last_error, std::size_t attempts)
      : Error("provider failed after " + std::to_string(attempts) + " attempt(s): " + last_error),
        attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

class ContextOverflow : public Error {
 public:
  ContextOverflow(std::size_t required, std::size_t available)
      : Error("prompt needs " + std::to_string(required) + " tokens but the provider allows " +
              std::to_string(available)),
        required_(required),
        available_(available) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

class CandidateCapExceeded : public Error {
 public:
  CandidateCapExceeded(std::size_t size, std::size_t cap)
      : Error("candidate product has " + std::to_string(size) + " entries, cap is " +
              std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

}  // namespace nanoie
