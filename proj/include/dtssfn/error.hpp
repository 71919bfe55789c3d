#pragma once

#include <stdexcept>
#include <string>

namespace dtssfn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or lengths that do not agree with what an operation expects.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf in inputs or produced mid-computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

/// Pruning removed every transform output node.
class DegenerateLayerError : public Error {
 public:
  using Error::Error;
};

/// No candidate in the bag produced a usable layer.
class SelectionImpossibleError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ChecksumError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtssfn
