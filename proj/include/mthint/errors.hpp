#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mthint {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- condition grid ---
struct UnknownCondition : Error {
  using Error::Error;
};
struct MalformedLabel : Error {
  using Error::Error;
};

// --- wrapping / stripping ---
struct EmptySentence : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};

// --- scoring ---
struct LengthMismatch : Error {
  using Error::Error;
};
struct EmptyCorpus : Error {
  using Error::Error;
};
struct MissingBaseline : Error {
  using Error::Error;
};

// --- CoNLL-U parsing ---
struct MalformedLine : Error {
  using Error::Error;
};
struct NonContiguousIds : Error {
  using Error::Error;
};
struct MissingRoot : Error {
  using Error::Error;
};

// --- backends ---
struct BackendError : Error {
  using Error::Error;
};
struct AuthError : BackendError {
  using BackendError::BackendError;
};
struct QuotaError : BackendError {
  QuotaError(const std::string& msg, std::optional<double> retry_after_s = {})
      : BackendError(msg), retry_after(retry_after_s) {}
  std::optional<double> retry_after;  // seconds, from the server when given
};
struct NetworkError : BackendError {
  using BackendError::BackendError;
};
struct ResponseError : BackendError {
  using BackendError::BackendError;
};
struct MissingFixture : BackendError {
  using BackendError::BackendError;
};

// --- harness ---
struct ConfigError : Error {
  using Error::Error;
};
struct CorpusLengthMismatch : Error {
  using Error::Error;
};

}  // namespace mthint
