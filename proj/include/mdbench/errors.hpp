#pragma once

#include <stdexcept>
#include <string>

namespace mdbench {

// Raised for malformed user input: bad configuration files, non-unitary
// matrices, inconsistent histograms and the like.  The CLI maps this family
// of errors to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a file cannot be read or written.  The CLI maps this to exit
// code 2 so scripted callers can tell I/O trouble from bad input.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Every shot of a postselection experiment was discarded (or, after readout
// mitigation, the surviving quasi-probability mass is not positive), so no
// probability estimate can be formed.
class NoValidShots : public ValidationError {
 public:
  explicit NoValidShots(const std::string& what) : ValidationError(what) {}
};

// A readout calibration whose confusion matrix is numerically singular and
// therefore cannot be inverted for mitigation.
class SingularCalibration : public ValidationError {
 public:
  explicit SingularCalibration(const std::string& what) : ValidationError(what) {}
};

// The two measurements handed to the strategy synthesizer coincide (up to
// phases); no discriminating strategy exists for them.
class DegenerateDiscrimination : public ValidationError {
 public:
  explicit DegenerateDiscrimination(const std::string& what) : ValidationError(what) {}
};

}  // namespace mdbench
