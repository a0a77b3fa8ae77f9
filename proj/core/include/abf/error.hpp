#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration content (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A function was called outside its contract (empty input, mismatched grids).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Base of all failures raised while computing (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class StepError : public NumericalError {
 public:
  StepError(const std::string& what, std::size_t particle)
      : NumericalError(what + " (particle " + std::to_string(particle) + ")"),
        particle_(particle) {}
  std::size_t particle() const noexcept { return particle_; }

 private:
  std::size_t particle_;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularDensityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace abf
