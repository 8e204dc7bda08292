#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rltrc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfArenaError : public Error {
 public:
  using Error::Error;
};

// An acknowledgement that reports more received power than was sent.
class MalformedAckError : public Error {
 public:
  using Error::Error;
};

class UndefinedAttenuationError : public Error {
 public:
  using Error::Error;
};

class VelocityUnobservableError : public Error {
 public:
  using Error::Error;
};

class InvalidActionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class TurnOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class UnusableLinkError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Carries every violated constraint, not just the first one found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid scenario config";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace rltrc
