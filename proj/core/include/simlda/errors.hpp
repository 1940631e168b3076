#pragma once

#include <stdexcept>
#include <string>

namespace simlda {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function argument violates its documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A configuration object is internally inconsistent (e.g. K_m >= K).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data (corpus, matrices, files) has the wrong shape or content.
class InputError : public Error {
 public:
  using Error::Error;
};

/// KL divergence is infinite: q has zero mass where p does not.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace simlda
