#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esrf {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SchemaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedAttribute : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownNominalValue : public std::runtime_error {
 public:
  UnknownNominalValue(std::size_t line, const std::string& token)
      : std::runtime_error("line " + std::to_string(line) + ": unknown nominal value '" + token +
                           "'"),
        token_(token) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class EmptyEnsemble : public std::logic_error {
 public:
  EmptyEnsemble() : std::logic_error("prediction requested from an empty member set") {}
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& constraint)
      : std::invalid_argument(key + ": " + constraint), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace esrf
