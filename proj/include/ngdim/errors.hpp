#ifndef NGDIM_ERRORS_HPP
#define NGDIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ngdim {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad arguments, configuration or model descriptors (CLI exit code 2).
struct ValidationError : Error {
  using Error::Error;
};

/// Unreadable or malformed input files (CLI exit code 3).
struct IngestionError : Error {
  using Error::Error;
};

/// Numerical failure: singular systems, non-finite values, unstable
/// recursions (CLI exit code 4).
struct NumericError : Error {
  using Error::Error;
};

/// The KP weighting matrix is numerically zero; callers may fall back to
/// the first-step statistic form.
struct DegenerateWeightingError : NumericError {
  using NumericError::NumericError;
};

}  // namespace ngdim

#endif
