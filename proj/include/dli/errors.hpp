#pragma once

#include <stdexcept>
#include <string>

namespace dli {

//! Field evaluated inside its singular set (e.g. on the R = 0 axis).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! A quantity the model does not provide (vector potential, a diagnostic, ...).
class UnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Malformed or invalid configuration, scenario, rule or method name.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dli
