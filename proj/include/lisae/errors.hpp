#ifndef LISAE_ERRORS_HPP
#define LISAE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lisae {

/// Invalid argument values: bad dimensions, out-of-range ranks, shape mismatches.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data that fails validation: non-finite entries, empty datasets, missing labels.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input files: bad magic numbers, truncation, count mismatches.
class ParseError : public DataError {
public:
    using DataError::DataError;
};

/// Inconsistent configuration or task specification.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values produced during numerics; training aborts with this.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failures (open/read/write).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lisae

#endif // LISAE_ERRORS_HPP
