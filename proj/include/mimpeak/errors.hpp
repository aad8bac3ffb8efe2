#pragma once

#include <stdexcept>
#include <string>

namespace mimpeak {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (spectrum files, non-uniform grids).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Window selection failures: peak below threshold, too few samples,
/// degenerate (near-zero) amplitude sums.
class WindowError : public Error {
public:
    using Error::Error;
};

/// Estimator failures: flat bracketing segments, no in-range mirror
/// points, violated interpolation preconditions.
class EstimatorError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (bad flags, conflicting options, unwritable output).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mimpeak
