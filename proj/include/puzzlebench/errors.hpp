#pragma once

#include <stdexcept>
#include <string>

namespace puzzlebench {

// Error classes map onto distinct CLI exit codes; keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad run configuration, unknown keys, missing required settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Dataset or annotation files that fail validation. Collects every
// diagnostic for the file so the user sees all offending records at once.
class DataError : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  using Error::Error;
};

// Auth environment variable unset or empty.
class AuthError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Non-retryable HTTP failure; carries status and response body.
class HttpError : public BackendError {
 public:
  HttpError(int status, const std::string& body)
      : BackendError("HTTP " + std::to_string(status) + ": " + body),
        status_(status),
        body_(body) {}
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

class RetriesExhaustedError : public BackendError {
 public:
  using BackendError::BackendError;
};

class MalformedResponseError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Scripted backend asked for a prompt it has no entry for.
class ScriptMissError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Prediction/gold mismatches during scoring (missing or unknown ids).
class ScoringError : public Error {
 public:
  using Error::Error;
};

}  // namespace puzzlebench
