#ifndef MAVNORM_ERRORS_HPP
#define MAVNORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mavnorm {

// Base class for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude vector does not have unit norm within tolerance.
struct NotNormalized : Error {
    using Error::Error;
};

// Basis string length does not match the state it is evaluated against,
// or two tables that must align do not.
struct ShapeMismatch : Error {
    using Error::Error;
};

// A site had the wrong local dimension for the requested operation.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Enumeration-based operation asked to enumerate past its size cap.
struct TooLarge : Error {
    using Error::Error;
};

// Index or argument outside its documented range.
struct OutOfRange : Error {
    using Error::Error;
};

// Tail mode is not defined for the given state (frequency mode on non-qubits).
struct ModeUnsupported : Error {
    using Error::Error;
};

// Zero-probability basis string passed where a supported branch is required.
struct NotAWorld : Error {
    using Error::Error;
};

// Observable handed to a Markov-style check has a negative eigenvalue.
struct NegativeEigenvalue : Error {
    using Error::Error;
};

// Threshold that must be positive was not.
struct NonpositiveThreshold : Error {
    using Error::Error;
};

// Invalid experiment configuration (bad key, bad value, missing field).
struct ConfigError : Error {
    using Error::Error;
};

// Filesystem read/write failure.
struct IoError : Error {
    using Error::Error;
};

} // namespace mavnorm

#endif
