#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amdahl {

/// Base class for data- and model-infeasibility errors. The CLI maps these to
/// exit code 3; std::invalid_argument (precondition violations) maps there too.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The parallelizable fraction is undefined for fewer than two units.
class DegenerateInstanceError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Measured speedup or efficiency outside the range the model admits.
class InconsistentMeasurementError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Named sequential contributions add up to 1 or more.
class OverSubscribedContributionsError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Clustering factor outside [1, n].
class InvalidClusteringError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Parameter outside the range the model is calibrated for.
class OutOfModelRangeError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Reduced-precision run slower than the full-precision run (time64 < time16).
class InvertedTimesError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// time64 above the operand-ratio ceiling would force negative housekeeping.
class NegativeHousekeepingError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// A record contradicts itself (for example r_max > r_peak).
class IntegrityError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Malformed input text. Carries 1-based line and column of the offence.
class ParseError : public ModelError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ModelError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Filesystem-level failure. The CLI maps these to exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace amdahl
