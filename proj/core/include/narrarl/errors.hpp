#pragma once

#include <stdexcept>
#include <string>

namespace narrarl {

/// Base class for all narrarl runtime errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A public-API precondition was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// env
class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

// narratives
class UnknownNarrativeError : public Error {
 public:
  using Error::Error;
};
class TemplateError : public Error {
 public:
  using Error::Error;
};

// parsing / validation of files and configs
class ParseError : public Error {
 public:
  using Error::Error;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};

// llm_client
class AuthMissingError : public Error {
 public:
  using Error::Error;
};
class TransportError : public Error {
 public:
  using Error::Error;
};
class HttpError : public Error {
 public:
  HttpError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};
class MalformedBodyError : public Error {
 public:
  using Error::Error;
};
class ScriptExhaustedError : public Error {
 public:
  using Error::Error;
};

// trace
class TraceIoError : public Error {
 public:
  using Error::Error;
};
class InvariantViolationError : public Error {
 public:
  using Error::Error;
};
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// cli / rendering
class OutOfBoundsError : public Error {
 public:
  using Error::Error;
};

}  // namespace narrarl
