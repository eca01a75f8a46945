#pragma once

#include <stdexcept>
#include <string>

namespace datakit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Bytes were read but could not be decoded into an image or stream.
class DecodeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

/// A parameter is outside the range its consumer accepts.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Failure inside an encoder/decoder round trip.
class CodecError : public Error {
 public:
  using Error::Error;
};

/// Failure of a degradation step; carries the index of the failing step.
class StepError : public Error {
 public:
  StepError(std::size_t step_index, const std::string& what)
      : Error("step " + std::to_string(step_index) + ": " + what), step_index_(step_index) {}

  std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

}  // namespace datakit
