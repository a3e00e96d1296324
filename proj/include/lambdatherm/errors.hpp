#pragma once

#include <stdexcept>
#include <string>

namespace lambdatherm {

/// Raised when a computation cannot produce a trustworthy number
/// (singular configuration, unconverged integral, passivity violation).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed or out-of-range user input. `key()` names the
/// offending configuration key when there is one.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace lambdatherm
