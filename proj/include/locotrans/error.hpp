#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locotrans {

/// Base of every error raised by the library. Callers that only need to map
/// failures to an exit code can catch `DataError` vs `ConfigError`.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with input data: malformed trials, bad streams, untrainable sets.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Problems with configuration, scripts or command-line arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

/// Row-addressed data error; `row` is the 1-based data row (header excluded).
class RowError : public DataError {
 public:
  RowError(std::size_t row, const std::string& what)
      : DataError("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Raised by the streaming detector; `index` is the 0-based sample index.
class StreamError : public DataError {
 public:
  StreamError(std::size_t index, const std::string& what)
      : DataError("sample " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class InsufficientDataError : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateDataError : public DataError {
 public:
  using DataError::DataError;
};

class DivergenceError : public DataError {
 public:
  DivergenceError(int epoch, const std::string& what)
      : DataError("epoch " + std::to_string(epoch) + ": " + what),
        epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

class NoBoundaryError : public DataError {
 public:
  using DataError::DataError;
};

class LabelingError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyInputError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace locotrans
